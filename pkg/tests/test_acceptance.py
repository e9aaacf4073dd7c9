"""Acceptance criteria 1-9.

Run with ``pytest tests/test_acceptance.py -s`` (or directly with
``python3 tests/test_acceptance.py``); every criterion prints one
``PASS``/``FAIL`` line with its measured runtime.
"""

from __future__ import annotations

import io
import json
import math
import os
import pathlib
import random
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from generators import instances  # noqa: E402
from theorems import check_instance  # noqa: E402

from lcpalg import LieAlgebra, Metric, OneForm, Subspace  # noqa: E402
from lcpalg import linalg as la  # noqa: E402
from lcpalg.algebra import trace_form  # noqa: E402
from lcpalg.cli import cli_main  # noqa: E402
from lcpalg.constructions import (  # noqa: E402
    OrthogonalRep,
    cflat_extension,
    example_rp,
    example_sld,
    example_so3,
    example_sol3,
    example_su2r,
    so3_base,
    su2_plus_r,
)
from lcpalg.geometry import check_cflat_identities  # noqa: E402
from lcpalg.io import parse_document, serialize_candidate  # noqa: E402
from lcpalg.lattice import bock_parameter, companion_conjugacy  # noqa: E402
from lcpalg.verify import (  # noqa: E402
    Fingerprint,
    LcpCandidate,
    cflat_fingerprint,
    cflat_lee_realize,
    enumerate_lee_candidates,
    recover_theta,
    verify,
    weyl_kernel,
)

F = Fraction
ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
FIXTURES = ROOT / "tests" / "fixtures"


class Failure(Exception):
    pass


def require(cond, msg):
    if not cond:
        raise Failure(msg)


def timed(fn):
    t0 = time.perf_counter()
    try:
        detail = fn()
        ok, err = True, None
    except Failure as e:
        ok, err, detail = False, str(e), None
    return ok, detail, err, time.perf_counter() - t0


# 1 -------------------------------------------------------------------------------


def sampled_su2r_params(count=10, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        mu = F(rng.randint(1, 12), rng.randint(1, 6))
        lam = F(rng.choice([-1, 1]) * rng.randint(1, 12), rng.randint(1, 6))
        x0 = tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
        out.append((mu, lam, x0))
    return out


def criterion_1():
    c = example_su2r(1, 1, (0, 0, 0))
    r = verify(c)
    require(r.is_conformally_flat, "su2r(1,1,0) is not conformally flat")
    require(c.theta(la.unit(4, 3)) == F(1, 8), f"theta(z) = {c.theta(la.unit(4, 3))}")
    require(c.metric.form_norm2(c.theta) == F(1, 8), "|theta|^2 != 1/8")
    for mu, lam, x0 in sampled_su2r_params():
        s = example_su2r(mu, lam, x0)
        require(verify(s).is_conformally_flat, f"verify failed at {(mu, lam, x0)}")
        rep = check_cflat_identities(s.algebra, s.metric, s.theta)
        require(rep.ok and rep.nabla_theta_zero, f"identities failed at {(mu, lam, x0)}")
    return "theta(z) = |theta|^2 = 1/8; 10 sampled triples verified"


# 2 -------------------------------------------------------------------------------


def criterion_2():
    names = []
    for name, c in (("sol3", example_sol3()), ("so3", example_so3()), ("sld2", example_sld(2))):
        r = verify(c)
        require(r.unimodular and r.is_adapted and r.is_proper, f"{name}: flags {r.flags()}")
        require(recover_theta(c.algebra, c.u) == c.theta, f"{name}: recovered theta differs")
        require(r.trace_relations_ok, f"{name}: trace relations fail")
        require(r.q <= r.n - 2, f"{name}: q = {r.q}, n = {r.n}")
        names.append(f"{name}(n={r.n},q={r.q})")
    return ", ".join(names)


# 3 -------------------------------------------------------------------------------


def criterion_3():
    H, _ = so3_base()
    b = H.basis_names.index("b")
    H_form = trace_form(H)
    require(H_form == OneForm.dual(H.dim, b, -3), f"H = {H_form}")
    require(list(H_form.coeffs) == oracles.trace_form(H), "oracle trace form disagrees")
    return "H = -3 b^flat"


# 4 -------------------------------------------------------------------------------


def criterion_4(count=210):
    insts = instances(count, seed=20240611)
    violations = Counter()
    for inst in insts:
        bad, _ = check_instance(inst["cand"], inst["theta"])
        violations.update(bad)
    require(len(insts) >= 200, "fewer than 200 instances")
    require(not violations, f"violations: {dict(violations)}")
    mix = Counter((i["q"], i["beta"]) for i in insts)
    return f"{len(insts)} instances, 0 violations, mix {dict(sorted(mix.items()))}"


# 5 -------------------------------------------------------------------------------


def cflat_corpus():
    out = [
        example_rp(1, Metric([[1]]), (1,)),
        example_rp(1, Metric([[3]]), (F(-2, 5),)),
        example_rp(2, Metric.identity(2), (3, 4)),
        example_rp(2, Metric([[2, 1], [1, 3]]), (1, -1)),
        example_su2r(1, 1, (0, 0, 0)),
    ]
    out += [example_su2r(*p) for p in sampled_su2r_params(4, seed=5)]
    return out


def criterion_5():
    seen = Counter()
    for c in cflat_corpus():
        r = verify(c)
        require(r.is_conformally_flat and r.unimodular, "corpus member not conformally flat unimodular")
        fp = cflat_fingerprint(c.algebra)
        require(fp != Fingerprint.OTHER, f"fingerprint OTHER on dim {c.dim}")
        seen[fp.name] += 1
    probe = LcpCandidate(LieAlgebra.abelian(3), Metric.identity(3), (1, 0, 0), Subspace.whole(3))
    r = verify(probe)
    require(not r.cond3_representation and not r.is_lcp, "R^3 probe passed cond3")
    w = [w for w in r.witnesses if w.condition == "cond3"]
    require(w, "no cond3 witness")
    i, j = w[0].pair
    D = oracles.weyl_christoffel(probe.algebra, probe.metric, probe.theta)
    import sympy as sp

    A = sp.Matrix(3, 3, lambda k, l: D[i][l][k])
    B = sp.Matrix(3, 3, lambda k, l: D[j][l][k])
    require(A * B - B * A != sp.zeros(3, 3), "witness pair commutes")
    return f"fingerprints {dict(seen)}; probe witness pair (e{i + 1}, e{j + 1})"


# 6 -------------------------------------------------------------------------------


def criterion_6():
    e = cflat_extension(LieAlgebra.abelian(1), Metric.identity(1), (1,), OrthogonalRep.zero(1, 2), 2)
    K, rep = weyl_kernel(e.algebra, e.metric, e.theta)
    require(K.equals(Subspace.coordinate(3, [1, 2])), f"kernel {K.vectors}")
    require(rep.ok, f"kernel report {rep}")
    s = example_su2r(1, 1, (0, 0, 0))
    K, rep = weyl_kernel(s.algebra, s.metric, s.theta)
    require(K.dim == 0 and rep.compact_type and rep.ok, f"su2r kernel report {rep}")
    members = cflat_corpus() + [
        e,
        cflat_extension(LieAlgebra.abelian(2), Metric.identity(2), (1, 0), OrthogonalRep.zero(2, 1), 1),
        cflat_extension(s.algebra, s.metric, s.theta, OrthogonalRep.zero(4, 3), 3),
    ]
    for c in members:
        _, rep = weyl_kernel(c.algebra, c.metric, c.theta)
        require(rep.equivalence, f"equivalence fails on dim {c.dim}")
    return f"R b ⋉ R^2 kernel = R^2; su2r kernel = 0; equivalence on {len(members)} members"


# 7 -------------------------------------------------------------------------------


def criterion_7():
    sizes = []
    for name, c in (("sol3", example_sol3()), ("so3", example_so3())):
        en = enumerate_lee_candidates(c.algebra, 1e-9)
        require(en.matches(c.theta, 1e-9), f"{name}: theta not among candidates")
        again = enumerate_lee_candidates(c.algebra, 1e-9)
        require([x.coeffs for x in en] == [x.coeffs for x in again], f"{name}: list not stable")
        sizes.append(f"{name}: {len(en)}")
    for tz in (F(1, 8), F(1), F(-2)):
        theta = OneForm((0, 0, 0, tz))
        c = cflat_lee_realize(su2_plus_r(), theta)
        require(verify(c).is_conformally_flat, f"realization for theta(z) = {tz} fails verify")
        require(c.theta == theta, f"Lee form differs for theta(z) = {tz}")
    return "candidate counts " + ", ".join(sizes) + "; theta(z) in {1/8, 1, -2} realized"


# 8 -------------------------------------------------------------------------------


def criterion_8():
    worst = 0.0
    for m in range(3, 11):
        t = bock_parameter(m)
        require(abs(math.exp(t) + math.exp(-t) - m) <= 1e-12, f"m={m}: parameter")
        cert = companion_conjugacy(m, 3)
        require(cert.det_E == 1, f"m={m}: det E = {cert.det_E}")
        require(cert.block_residual <= 1e-9, f"m={m}: residual {cert.block_residual}")
        worst = max(worst, cert.block_residual)
    return f"max block residual {worst:.2e}"


# 9 -------------------------------------------------------------------------------


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    return cli_main(argv, out, err), out.getvalue()


def criterion_9():
    docs = sorted(DATA.glob("*.json"))
    require(docs, "no shipped documents")
    for p in docs:
        text = p.read_text(encoding="utf-8")
        d = parse_document(text)
        require(serialize_candidate(d.candidate, d.meta) == text, f"{p.name}: round trip differs")
    corpus = [
        (DATA / "sol3.json", 0, True),
        (FIXTURES / "r3_cond3.json", 1, False),
        (FIXTURES / "malformed.json", 2, None),
    ]
    for path, want, lcp in corpus:
        code, out = _run_cli(["check", "--json", str(path)])
        require(code == want, f"{path.name}: exit {code}, expected {want}")
        rep = json.loads(out)
        if lcp is None:
            require("error" in rep, f"{path.name}: no error reported")
        else:
            require(rep["is_lcp"] is lcp and rep["exit_status"] == code, f"{path.name}: report/exit mismatch")
    return f"{len(docs)} documents round-trip; exit codes 0/1/2 as expected"


CRITERIA = [
    (1, "su2r reproduction", criterion_1, 1.0),
    (2, "extension round-trip", criterion_2, 5.0),
    (3, "so(3) base trace form", criterion_3, None),
    (4, "theorem suite", criterion_4, 60.0),
    (5, "conformally flat classification", criterion_5, None),
    (6, "Weyl kernel", criterion_6, None),
    (7, "Lee enumeration", criterion_7, None),
    (8, "lattice certificates", criterion_8, 1.0),
    (9, "serialization and CLI", criterion_9, None),
]


def run_criterion(num, title, fn, limit):
    ok, detail, err, dt = timed(fn)
    if ok and limit is not None and dt >= limit:
        ok, err = False, f"runtime {dt:.2f} s exceeds {limit:g} s"
    status = "PASS" if ok else "FAIL"
    budget = f" / limit {limit:g} s" if limit is not None else ""
    line = f"[{status}] criterion {num}: {title} ({dt:.2f} s{budget}) - {detail if ok else err}"
    return ok, line


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, limit, capsys):
    ok, line = run_criterion(num, title, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
