"""JSON candidate documents and verification reports.

A candidate document looks like::

    {
      "dim": 3,
      "brackets": [
        {"i": 0, "j": 1, "k": 1, "coeff": "1"},
        {"i": 0, "j": 2, "k": 2, "coeff": "-1"}
      ],
      "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
      "theta": ["-1", "0", "0"],
      "u_basis": [["0", "0", "1"]],
      "meta": {"name": "sol3"}
    }

Only ``i < j`` brackets are stored.  Numbers are rational strings so that
documents round-trip bit-exactly.  The optional meta key ``basis`` holds
comma-separated basis names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import linalg as la
from .algebra import LieAlgebra, Subspace
from .errors import MalformedInputError, MalformedRationalError, ParseError
from .geometry import Metric
from .linalg import format_rational, parse_rational
from .verify import LcpCandidate, VerificationReport, Witness

__all__ = [
    "CandidateDocument",
    "parse_document",
    "parse_candidate",
    "parse_metric_algebra",
    "serialize_candidate",
    "report_document",
    "serialize_report",
    "format_report",
]

FIELDS = ("dim", "brackets", "metric", "theta", "u_basis", "meta")


@dataclass(frozen=True)
class CandidateDocument:
    candidate: LcpCandidate
    meta: dict = field(default_factory=dict)


def _rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise MalformedRationalError(f"{where}: expected a rational string, got {x!r}")
    if isinstance(x, int):
        return la.Q(x)
    try:
        return parse_rational(x)
    except MalformedRationalError as e:
        raise MalformedRationalError(f"{where}: {e}") from None


def _index(x, n, where):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
        raise ParseError(f"{where}: index {x!r} out of range for dimension {n}")
    return x


def _vector(xs, n, where):
    if not isinstance(xs, list):
        raise ParseError(f"{where}: expected an array")
    if len(xs) != n:
        raise ParseError(f"{where}: dimension mismatch, expected {n} entries, got {len(xs)}")
    return tuple(_rational(x, f"{where}[{k}]") for k, x in enumerate(xs))


def _load(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"syntax error: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return doc


def _require(doc, key):
    if key not in doc:
        raise ParseError(f"missing field {key}")
    return doc[key]


def _parse_brackets(raw, n):
    if not isinstance(raw, list):
        raise ParseError("brackets: expected an array")
    entries = {}
    for pos, rec in enumerate(raw):
        where = f"brackets[{pos}]"
        if isinstance(rec, dict):
            missing = [k for k in ("i", "j", "k", "coeff") if k not in rec]
            if missing:
                raise ParseError(f"{where}: missing field {missing[0]}")
            i, j, k, coeff = rec["i"], rec["j"], rec["k"], rec["coeff"]
        elif isinstance(rec, list) and len(rec) == 4:
            i, j, k, coeff = rec
        else:
            raise ParseError(f"{where}: expected {{i, j, k, coeff}}")
        i, j, k = (_index(v, n, where) for v in (i, j, k))
        c = _rational(coeff, where)
        if i == j:
            if c:
                raise ParseError(f"{where}: [e{i}, e{i}] must vanish")
            continue
        if i > j:
            i, j, c = j, i, -c
        if (i, j, k) in entries:
            raise ParseError(f"{where}: duplicate entry for [e{i}, e{j}] along e{k}")
        entries[(i, j, k)] = c
    brackets = {}
    for (i, j, k), c in entries.items():
        brackets.setdefault((i, j), {})[k] = c
    return brackets


def _parse_meta(raw):
    if raw is None:
        return {}
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
    ):
        raise ParseError("meta: expected a map of strings")
    return dict(raw)


def _names(meta, n):
    names = meta.get("basis")
    if names is None:
        return None
    names = tuple(s.strip() for s in names.split(","))
    if len(names) != n:
        raise ParseError(f"meta.basis: expected {n} names, got {len(names)}")
    return names


def _algebra_and_metric(doc):
    n = _require(doc, "dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError(f"dim: expected a non-negative integer, got {n!r}")
    brackets = _parse_brackets(_require(doc, "brackets"), n)
    rows = _require(doc, "metric")
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"metric: dimension mismatch, expected {n} rows")
    gram = tuple(_vector(r, n, f"metric[{a}]") for a, r in enumerate(rows))
    meta = _parse_meta(doc.get("meta"))
    L = LieAlgebra.from_brackets(n, brackets, _names(meta, n))
    return L, Metric(gram), meta


def parse_document(text: str) -> CandidateDocument:
    doc = _load(text)
    for key in FIELDS[:-1]:
        _require(doc, key)
    L, M, meta = _algebra_and_metric(doc)
    n = L.dim
    theta = _vector(doc["theta"], n, "theta")
    ub = doc["u_basis"]
    if not isinstance(ub, list):
        raise ParseError("u_basis: expected an array")
    vectors = [_vector(v, n, f"u_basis[{a}]") for a, v in enumerate(ub)]
    try:
        U = Subspace(vectors, n)
    except MalformedInputError as e:
        raise ParseError(f"u_basis: {e}") from None
    return CandidateDocument(LcpCandidate(L, M, theta, U), meta)


def parse_candidate(text: str) -> LcpCandidate:
    """Rebuild a candidate from document text.  Only the document shape is
    checked here; whether it is an LCP structure is left to ``verify``."""
    return parse_document(text).candidate


def parse_metric_algebra(text: str):
    """``(algebra, metric, meta)`` from a document; theta and u_basis are
    optional here, which is what ``extend`` needs."""
    return _algebra_and_metric(_load(text))


def _q(x):
    return json.dumps(format_rational(x))


def _row(xs):
    return "[" + ", ".join(_q(x) for x in xs) + "]"


def _rows(rs, indent="    "):
    if not rs:
        return "[]"
    return "[\n" + ",\n".join(indent + _row(r) for r in rs) + "\n  ]"


def serialize_candidate(c: LcpCandidate, meta: dict | None = None) -> str:
    """Canonical text: lowest terms, ``i < j`` brackets sorted, fixed key order."""
    L = c.algebra
    n = L.dim
    meta = dict(meta or {})
    default = tuple(f"e{i + 1}" for i in range(n))
    if L.basis_names and tuple(L.basis_names) != default:
        meta.setdefault("basis", ",".join(L.basis_names))
    br = []
    for i in range(n):
        for j in range(i + 1, n):
            for k, x in enumerate(L.c[i][j]):
                if x:
                    br.append(
                        f'    {{"i": {i}, "j": {j}, "k": {k}, "coeff": {_q(x)}}}'
                    )
    brackets = "[\n" + ",\n".join(br) + "\n  ]" if br else "[]"
    parts = [
        f'  "dim": {n}',
        f'  "brackets": {brackets}',
        f'  "metric": {_rows(c.metric.gram)}',
        f'  "theta": {_row(c.theta.coeffs)}',
        f'  "u_basis": {_rows(c.u.vectors)}',
        f'  "meta": {json.dumps(dict(sorted(meta.items())), ensure_ascii=False)}',
    ]
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _witness_doc(w: Witness) -> dict:
    return {
        "condition": w.condition,
        "pair": list(w.pair),
        "residual": [format_rational(x) for x in w.residual],
    }


def report_document(report: VerificationReport, source: str | None = None) -> dict:
    doc = {}
    if source is not None:
        doc["file"] = source
    doc["n"] = report.n
    doc["q"] = report.q
    doc.update(report.flags())
    doc["witnesses"] = [_witness_doc(w) for w in report.witnesses]
    doc["exit_status"] = 0 if report.is_lcp else 1
    return doc


def serialize_report(report: VerificationReport, source: str | None = None) -> str:
    return json.dumps(report_document(report, source), indent=2)


def _fmt_flag(v):
    return "n/a" if v is None else str(v).lower()


def format_report(report: VerificationReport, source: str | None = None, max_witnesses: int = 5) -> str:
    lines = []
    if source is not None:
        lines.append(f"{source}:")
    lines.append(f"  n = {report.n}, q = {report.q}")
    for k, v in report.flags().items():
        lines.append(f"  {k}: {_fmt_flag(v)}")
    for w in report.witnesses[:max_witnesses]:
        res = ", ".join(format_rational(x) for x in w.residual)
        lines.append(f"  witness {w.condition} {tuple(w.pair)}: ({res})")
    extra = len(report.witnesses) - max_witnesses
    if extra > 0:
        lines.append(f"  ... {extra} more witnesses")
    lines.append(f"  verdict: {'LCP' if report.is_lcp else 'not LCP'}")
    return "\n".join(lines)
