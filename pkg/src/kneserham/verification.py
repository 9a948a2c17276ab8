"""Independent certification of cycles and of the structural facts the construction relies on.

Nothing here calls into the splicer or bridge code paths it is checking,
apart from :func:`verify_lemmas`, which needs the pipeline's intermediate
objects and re-derives every property from the raw triangulations.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from .errors import DecodeError, InvalidSizeError, ParseError
from .orbits import all_ears, orbit_partition
from .polygon import Polygon, catalan, polygon


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[object] = None
    detail: str = ""


@dataclass
class CertificateReport:
    kind: str
    n: int
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=None, detail=""):
        if not passed and witness is None:
            raise ValueError(f"failing check {name!r} needs a witness")
        self.checks.append(Check(name, passed, witness, detail))

    def summary_line(self) -> str:
        return f"RESULT {'pass' if self.passed else 'fail'} checks={len(self.checks)}"

    def render(self) -> str:
        lines = [f"{self.kind} n={self.n}"]
        for c in self.checks:
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if not c.passed:
                line += f" witness={c.witness}"
            lines.append(line)
        lines.append(self.summary_line())
        return "\n".join(lines)


# -- cycle certificates ---------------------------------------------------------

def _parse_header(line: str, line_no: int, tag: str) -> dict:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise ParseError(line_no, f"expected header starting with {tag!r}")
    fields = {}
    for token in parts[1:]:
        if "=" not in token:
            raise ParseError(line_no, f"malformed header field {token!r}")
        k, v = token.split("=", 1)
        fields[k] = v
    for k in ("n", "len"):
        if k not in fields:
            raise ParseError(line_no, f"header lacks {k}=")
        try:
            fields[k] = int(fields[k])
        except ValueError:
            raise ParseError(line_no, f"header {k}= is not an integer") from None
    return fields


def _records(lines: Iterable[str], tag: str):
    """Yield (line_no, header-or-None, payload) with blank lines skipped."""
    header = None
    first = True
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if first:
            first = False
            if line.startswith(tag):
                header = _parse_header(line, line_no, tag)
                yield line_no, header, None
                continue
        yield line_no, None, line


def _line_text(line: str, line_no: int) -> str:
    """Canonical "i-j,..." text of a compact or jsonl record; ParseError if unreadable."""
    if line.startswith("{"):
        try:
            obj = json.loads(line)
            pairs = [tuple(int(x) for x in p) for p in obj["diagonals"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(line_no, f"bad jsonl record: {exc}") from None
        if any(len(p) != 2 for p in pairs):
            raise ParseError(line_no, "diagonal with other than two endpoints")
        text = ",".join(f"{i}-{j}" for i, j in pairs)
    else:
        text = line
        for token in text.split(","):
            bits = token.split("-")
            if len(bits) != 2 or not all(b.strip().isdigit() for b in bits):
                raise ParseError(line_no, f"malformed diagonal {token!r}")
    return text


def verify_kneser_cycle(lines: Iterable[str], n: int) -> CertificateReport:
    """Stream-check a claimed Hamiltonian cycle of KG(T_n).

    Memory is one flag byte per triangulation (indexed by canonical rank);
    only the first and previous entries of the listing are retained.
    """
    from .splicer import HEADER_TAG, set_checksum

    report = CertificateReport("kneser-cycle", n)
    if n < 5:
        raise InvalidSizeError(f"n={n}: KG(T_n) has a Hamiltonian cycle only for n >= 5")
    poly = polygon(n)
    expected = catalan(n - 2)
    rank = poly.rank_table()
    seen = bytearray(expected)

    header = None
    count = 0
    first = prev = None
    first_text = prev_text = None
    invalid = None
    duplicate = None
    nonedge = None
    digest = hashlib.sha256()
    for line_no, hdr, payload in _records(lines, HEADER_TAG):
        if hdr is not None:
            header = hdr
            continue
        text = _line_text(payload, line_no)
        digest.update(text.encode())
        digest.update(b"\n")
        count += 1
        try:
            code = poly.decode(text)
        except DecodeError as exc:
            if invalid is None:
                invalid = (line_no, text, str(exc))
            prev = prev_text = None
            continue
        r = rank[code]
        if seen[r]:
            if duplicate is None:
                duplicate = (line_no, text)
        else:
            seen[r] = 1
        if prev is not None and prev & code and nonedge is None:
            nonedge = (prev_line, prev_text, line_no, text)
        if first is None:
            first, first_text, first_line = code, text, line_no
        prev, prev_text, prev_line = code, text, line_no

    if header is not None:
        report.add("header n", header["n"] == n, (header["n"], n), f"header n={header['n']}")
        report.add("header len", header["len"] == expected, (header["len"], expected),
                   f"header len={header['len']}, C_(n-2)={expected}")
        if "checksum" in header:
            want = set_checksum(poly)
            report.add("header checksum", header["checksum"] == want, (header["checksum"], want))
        if "digest" in header:
            got = digest.hexdigest()[:16]
            report.add("header digest", header["digest"] == got, (header["digest"], got),
                       "listing order matches the header" if header["digest"] == got
                       else "listing differs from the one the header was issued for")
        if header["len"] != count:
            report.add("header matches listing", False, (header["len"], count),
                       f"header announces {header['len']} entries, listing has {count}")
    report.add("entries valid", invalid is None, invalid,
               "every line is a triangulation of the n-gon" if invalid is None else invalid[2])
    report.add("count", count == expected, (count, expected), f"{count} entries, expected {expected}")
    missing = None
    idx = seen.find(0)
    if idx >= 0:
        missing = poly.encode(poly.all_codes()[idx])
    report.add("distinct", duplicate is None, duplicate,
               "no triangulation repeated" if duplicate is None else f"line {duplicate[0]} repeats {duplicate[1]}")
    report.add("covers T_n", missing is None, missing,
               "every triangulation listed" if missing is None else f"{missing} never listed")
    if first is not None and prev is not None and count > 1 and nonedge is None and prev & first:
        nonedge = (prev_line, prev_text, first_line, first_text)
    report.add("consecutive disjoint", nonedge is None, nonedge,
               "all consecutive pairs incl. wraparound share no diagonal" if nonedge is None
               else f"lines {nonedge[0]} and {nonedge[2]} share a diagonal")
    return report


# -- brute force adjacency -------------------------------------------------------

class KneserOracle:
    """Full adjacency of KG(T_n) as bitset rows over canonical ranks."""

    MAX_N = 9

    def __init__(self, n: int):
        if n > self.MAX_N:
            raise InvalidSizeError(
                f"brute-force KG(T_{n}) would have {catalan(n - 2)} vertices; limit is n <= {self.MAX_N}")
        if n < 4:
            raise InvalidSizeError(f"n={n}: need n >= 4")
        self.n = n
        poly = polygon(n)
        self.codes = list(poly.all_codes())
        self.rank = {c: r for r, c in enumerate(self.codes)}
        # pairwise test on explicit diagonal sets, independent of the bit layout
        sets = [frozenset(poly.diagonals_of(c)) for c in self.codes]
        self.rows = []
        for a in sets:
            row = 0
            for r, b in enumerate(sets):
                if a.isdisjoint(b):
                    row |= 1 << r
            self.rows.append(row)

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.rows[self.rank[a]] >> self.rank[b] & 1)

    def degree(self, code: int) -> int:
        return bin(self.rows[self.rank[code]]).count("1")

    def edge_count(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2


def brute_force_kneser_graph(n: int) -> KneserOracle:
    return KneserOracle(n)


# -- structural checks ------------------------------------------------------------

EXHAUSTIVE_LIMIT = 12


def _stride(total: int, n: int) -> int:
    return 1 if n <= EXHAUSTIVE_LIMIT else max(1, total // 20000)


def check_orbit_sizes(n: int) -> Check:
    """Size-2 orbits exist exactly for n in {4, 6} and consist of ear-only triangulations."""
    part = orbit_partition(n)
    poly = part.polygon
    bad = None
    for o in part.orbits:
        if n % o.size:
            bad = ("size does not divide n", poly.encode(o.rep), o.size)
            break
        if o.size == 2:
            if n not in (4, 6) or not all(all_ears(poly, c) for c in o.members):
                bad = ("unexpected size-2 orbit", poly.encode(o.rep))
                break
        elif n in (4, 6) and all(all_ears(poly, c) for c in o.members):
            bad = ("ear-only orbit not of size 2", poly.encode(o.rep), o.size)
            break
        if n >= 7 and o.size < 3:
            bad = ("orbit smaller than 3", poly.encode(o.rep))
            break
    twos = sum(1 for o in part.orbits if o.size == 2)
    if bad is None and n in (4, 6) and twos != 1:
        bad = ("expected exactly one size-2 orbit", twos)
    return Check("orbit sizes", bad is None, bad, f"{len(part.orbits)} orbits, {twos} of size 2")


def check_rotation_disjoint(n: int) -> Check:
    """Every triangulation shares no diagonal with its rotation by one step."""
    poly = polygon(n)
    codes = poly.all_codes()
    step = _stride(len(codes), n)
    for c in codes[::step]:
        # explicit set comparison, not the bit layout
        d = set(poly.diagonals_of(c))
        rd = {tuple(sorted(((i % n) + 1, (j % n) + 1))) for i, j in d}
        if d & rd:
            return Check("rotation disjoint", False, poly.encode(c))
    return Check("rotation disjoint", True, detail=f"{len(codes[::step])} triangulations")


def check_flip_bridges(n: int) -> Check:
    """Every flip edge {T, U}: T is disjoint from U rotated by +1 or by -1."""
    poly = polygon(n)
    codes = poly.all_codes()
    step = _stride(len(codes), n)
    edges = 0
    for c in codes[::step]:
        base = set(poly.diagonals_of(c))
        for u in poly.flip_neighbours(c):
            if u < c and step == 1:
                continue
            edges += 1
            du = poly.diagonals_of(u)
            plus = {tuple(sorted(((i % n) + 1, (j % n) + 1))) for i, j in du}
            minus = {tuple(sorted((((i - 2) % n) + 1, ((j - 2) % n) + 1))) for i, j in du}
            if base & plus and base & minus:
                return Check("flip bridges", False, (poly.encode(c), poly.encode(u)))
    return Check("flip bridges", True, detail=f"{edges} flip edges")


def check_tree_degrees(n: int, pipe=None) -> Check:
    """deg_G(O) <= 1 + |guide ∩ O| <= |O| and |guide ∩ O| <= |O|/2 for every orbit."""
    from .splicer import run_pipeline

    pipe = pipe or run_pipeline(n)
    part, guide, tree = pipe.partition, pipe.guide, pipe.tree
    hits = Counter(part.orbit_id(c) for c in guide.seq)
    deg = tree.degree()
    for o in part.orbits:
        h = hits[o.id]
        if h == 0:
            return Check("tree degrees", False, ("orbit missed by guide", o.id))
        if 2 * h > o.size:
            return Check("tree degrees", False, ("guide meets orbit too often", o.id, h, o.size))
        if deg[o.id] > 1 + h or deg[o.id] > o.size:
            return Check("tree degrees", False, ("degree bound", o.id, deg[o.id], h, o.size))
    return Check("tree degrees", True, detail=f"max degree {max(deg.values(), default=0)}")


def check_bridge_factor(n: int, pipe=None) -> Check:
    """Bridges join distinct orbits, are KG edges, keep degree <= 3, occupy each orbit edge once,
    and contract to the tree."""
    from .splicer import run_pipeline

    pipe = pipe or run_pipeline(n)
    part, tree, factor = pipe.partition, pipe.tree, pipe.factor
    poly = part.polygon
    degree = Counter()
    for o in part.orbits:
        for c in o.members:
            degree[c] = 1 if o.size == 2 else 2
    occupied = Counter()
    contracted = set()
    for e in factor.bridges:
        da, db = set(poly.diagonals_of(e.a)), set(poly.diagonals_of(e.b))
        oa, ob = part.orbit_id(e.a), part.orbit_id(e.b)
        if da & db:
            return Check("bridge factor", False, ("bridge endpoints intersect", poly.encode(e.a), poly.encode(e.b)))
        if oa == ob:
            return Check("bridge factor", False, ("bridge inside one orbit", oa))
        degree[e.a] += 1
        degree[e.b] += 1
        for x in (e.a, e.b):
            occupied[frozenset((x, poly.rotate(x, 1)))] += 1
        contracted.add((oa, ob))
    worst = max(degree.values())
    if worst > 3:
        v = next(c for c, d in degree.items() if d > 3)
        return Check("bridge factor", False, ("degree above 3", poly.encode(v)))
    over = [e for e, k in occupied.items() if k > 1]
    if over:
        return Check("bridge factor", False, ("orbit edge occupied twice", sorted(poly.encode(c) for c in over[0])))
    if contracted != set(tree.edges()):
        return Check("bridge factor", False, ("contraction differs from tree", len(contracted), len(tree.edges())))
    return Check("bridge factor", True, detail=f"{len(factor.bridges)} bridges, max degree {worst}")


def verify_lemmas(n: int) -> CertificateReport:
    """Run every structural suite for one n; exhaustive up to n = 12, strided above."""
    from .splicer import run_pipeline

    if n < 4:
        raise InvalidSizeError(f"n={n}: need n >= 4")
    report = CertificateReport("structure", n)
    for chk in (check_orbit_sizes(n), check_rotation_disjoint(n), check_flip_bridges(n)):
        report.checks.append(chk)
    if n >= 6:
        pipe = run_pipeline(n)
        report.checks.append(check_tree_degrees(n, pipe))
        report.checks.append(check_bridge_factor(n, pipe))
    return report


# -- permutohedron cycles ---------------------------------------------------------

PERM_TAG = "perm-ham"


def _perm_rank(p) -> int:
    """Lehmer rank of a one-line permutation."""
    n = len(p)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        rank = rank * (n - i) + smaller
    return rank


def verify_perm_cycle(lines: Iterable[str], n: int) -> CertificateReport:
    """Stream-check a claimed Hamiltonian cycle of KG(Perm_n), one permutation per line."""
    from math import factorial

    from .permutohedron import kg_perm_adjacent

    if n < 3:
        raise InvalidSizeError(f"n={n}: KG(Perm_n) has a Hamiltonian cycle only for n >= 3")
    report = CertificateReport("perm-cycle", n)
    expected = factorial(n)
    seen = bytearray(expected)
    header = None
    count = 0
    first = prev = None
    invalid = duplicate = nonedge = None
    target = list(range(1, n + 1))
    for line_no, hdr, payload in _records(lines, PERM_TAG):
        if hdr is not None:
            header = hdr
            continue
        try:
            p = tuple(int(x) for x in payload.replace(",", " ").split())
        except ValueError:
            raise ParseError(line_no, f"not a list of integers: {payload!r}") from None
        count += 1
        if sorted(p) != target:
            if invalid is None:
                invalid = (line_no, payload)
            prev = None
            continue
        r = _perm_rank(p)
        if seen[r]:
            duplicate = duplicate or (line_no, p)
        seen[r] = 1
        if prev is not None and nonedge is None and not kg_perm_adjacent(prev[1], p):
            nonedge = (prev[0], prev[1], line_no, p)
        if first is None:
            first = (line_no, p)
        prev = (line_no, p)
    if header is not None:
        report.add("header n", header["n"] == n, (header["n"], n))
        report.add("header len", header["len"] == expected == count, (header["len"], expected, count))
    report.add("entries valid", invalid is None, invalid)
    report.add("count", count == expected, (count, expected), f"{count} entries, expected {expected}")
    report.add("distinct", duplicate is None, duplicate)
    if nonedge is None and first and prev and count > 1 and not kg_perm_adjacent(prev[1], first[1]):
        nonedge = (prev[0], prev[1], first[0], first[1])
    report.add("consecutive adjacent", nonedge is None, nonedge,
               "every consecutive pair incl. wraparound shares no facet" if nonedge is None else "")
    return report
