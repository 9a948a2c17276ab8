"""End-to-end acceptance checks.  Each test prints one ``criterion k: PASS|FAIL`` line."""

import io
import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

import oracles
from kneserham.cli import run
from kneserham.guide import backtracking_flip_cycle, build_guide_cycle, check_flip_cycle, flip_hamiltonian_cycle
from kneserham.orbits import all_ears, orbit_partition
from kneserham.permutohedron import (count_indecomposable, density_report, kg_perm_adjacent_by_quotient)
from kneserham.polygon import polygon
from kneserham.splicer import build_hamiltonian, run_pipeline
from kneserham.verification import (brute_force_kneser_graph, check_bridge_factor, check_flip_bridges,
                                    check_orbit_sizes, check_rotation_disjoint, check_tree_degrees,
                                    verify_kneser_cycle)

CATALAN = {5: 5, 6: 14, 7: 42, 8: 132, 9: 429, 10: 1430, 11: 4862, 12: 16796, 13: 58786, 14: 208012}


def parse_listing(text):
    """Certificate body -> list of frozensets of (i, j) pairs, without using the package parser."""
    out = []
    for line in text.splitlines()[1:]:
        if line.strip():
            out.append(frozenset(tuple(int(v) for v in d.split("-")) for d in line.split(",")))
    return out


def cli(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "kneserham", *args], input=stdin,
                          capture_output=True, text=True)


def test_criterion_1_hamcycle_and_verify(tmp_path, report_line):
    problems = []
    elapsed14 = None
    for n in range(5, 15):
        assert oracles.catalan_closed(n - 2) == CATALAN[n]
        path = tmp_path / f"cycle{n}.txt"
        start = time.perf_counter()
        gen = cli("hamcycle", "--n", str(n), "--out", str(path))
        ver = cli("verify", "--n", str(n), "--in", str(path))
        if n == 14:
            elapsed14 = time.perf_counter() - start
        if gen.returncode != 0 or ver.returncode != 0 or "RESULT pass" not in ver.stdout:
            problems.append((n, "cli", gen.returncode, ver.returncode))
            continue
        seq = parse_listing(path.read_text())
        if len(seq) != CATALAN[n] or len(set(seq)) != len(seq):
            problems.append((n, "count", len(seq)))
        if any(len(t) != n - 3 for t in seq):
            problems.append((n, "size"))
        bad = sum(1 for i in range(len(seq)) if seq[i] & seq[(i + 1) % len(seq)])
        if bad:
            problems.append((n, "shared diagonals", bad))
    ok = not problems and elapsed14 is not None and elapsed14 < 60
    report_line(1, ok, f"n=5..14 generated+verified, lengths C_(n-2), n=14 end-to-end {elapsed14:.1f}s; "
                       f"failures={problems}")
    assert ok


def test_criterion_2_oracle_equivalence(report_line):
    mismatches = 0
    checked = 0
    for n in range(5, 9):
        cycle = build_hamiltonian(n)
        buf = io.StringIO()
        cycle.write(buf)
        seq = parse_listing(buf.getvalue())
        graph = brute_force_kneser_graph(n)
        assert set(seq) == set(oracles.triangulations(n))
        for i in range(len(seq)):
            a, b = seq[i], seq[(i + 1) % len(seq)]
            ref = not a & b and a != b
            pkg = graph.adjacent(cycle.seq[i], cycle.seq[(i + 1) % len(seq)])
            checked += 1
            mismatches += (not ref) + (not pkg)
    report_line(2, mismatches == 0, f"{checked} consecutive pairs for n=5..8 checked against brute force; "
                                    f"mismatches={mismatches}")
    assert mismatches == 0


def test_criterion_3_structural_suites(report_line):
    failures = []
    for n in range(4, 13):
        chk = check_orbit_sizes(n)
        if not chk.passed:
            failures.append(("orbit sizes", n, chk.witness))
        sizes = Counter(len(o) for o in oracles.orbits(n)) if n <= 9 else None
        if sizes is not None and (2 in sizes) != (n in (4, 6)):
            failures.append(("oracle size-2 orbits", n))
    for n in range(4, 11):
        chk = check_rotation_disjoint(n)
        if not chk.passed:
            failures.append(("rotation disjoint", n, chk.witness))
    for n in range(5, 10):
        chk = check_flip_bridges(n)
        if not chk.passed:
            failures.append(("flip bridges", n, chk.witness))
    for n in range(6, 13):
        pipe = run_pipeline(n)
        for chk in (check_tree_degrees(n, pipe), check_bridge_factor(n, pipe)):
            if not chk.passed:
                failures.append((chk.name, n, chk.witness))
    report_line(3, not failures, "orbit sizes n<=12, rotation-disjoint n<=10, flip bridges n<=9, "
                                 f"tree degrees and bridge factor n<=12; counterexamples={failures}")
    assert not failures


def test_criterion_4_hexagon(report_line):
    pipe = run_pipeline(6, audit=True)
    poly = pipe.partition.polygon
    part, tree, guide = pipe.partition, pipe.tree, pipe.guide
    ears = next(o for o in part.orbits if o.size == 2)
    is_leaf = tree.degree()[ears.id] == 1 and ears.id not in tree.parent.values()
    reps = [c for c in guide.seq if part.orbit_id(c) == ears.id]
    last = reps == [guide.seq[-1]] and all_ears(poly, guide.seq[-1])
    seq = pipe.cycle.seq
    pairs = Counter(frozenset((seq[i], seq[(i + 1) % len(seq)])) for i in range(len(seq)))
    used_once = pairs[frozenset(ears.members)] == 1 and len(seq) == 14
    ok = is_leaf and last and used_once
    report_line(4, ok, f"all-ears orbit leaf={is_leaf}, sole guide member last={last}, "
                       f"its edge used once in the 14-cycle={used_once}")
    assert ok


def test_criterion_5_guide_contract(report_line):
    failures = []
    for n in range(6, 13):
        guide = build_guide_cycle(n)
        poly = guide.polygon
        sets = [frozenset(poly.diagonals_of(c)) for c in guide.seq]
        if any(not (a & b) for a, b in combinations(guide.seq, 2)):
            failures.append(("not independent", n))
        if n <= 9 and any(not (a & b) for a, b in combinations(sets, 2)):
            failures.append(("not independent (sets)", n))
        part = orbit_partition(n)
        if {part.orbit_id(c) for c in guide.seq} != set(range(len(part.orbits))):
            failures.append(("misses an orbit", n))
        if not oracles.hamiltonian_cycle_in(sets, oracles.flip_adjacent):
            failures.append(("not flip-connected", n))
    for m in range(5, 9):
        poly = polygon(m)
        built, searched = flip_hamiltonian_cycle(m), backtracking_flip_cycle(m)
        for name, seq in (("built", built.seq), ("searched", searched.seq)):
            sets = [frozenset(poly.diagonals_of(c)) for c in seq]
            if check_flip_cycle(poly, seq) is not None or len(set(sets)) != oracles.catalan_closed(m - 2) \
                    or not oracles.hamiltonian_cycle_in(sets, oracles.flip_adjacent):
                failures.append((name, m))
    report_line(5, not failures, "guide independent, meets every orbit, flip-connected for n<=12; "
                                 f"constructed vs backtracking Flip(m) cycles valid for m<=8; failures={failures}")
    assert not failures


def test_criterion_6_permutation_pipeline(tmp_path, capsys, report_line):
    failures = []
    for n in range(3, 8):
        path = tmp_path / f"perm{n}.txt"
        if run(["perm", "hamcycle", "--n", str(n), "--out", str(path)]) != 0:
            failures.append(("hamcycle", n))
            continue
        seq = [tuple(int(v) for v in line.split()) for line in path.read_text().splitlines()[1:]]
        if len(seq) != factorial(n) or set(seq) != set(permutations(range(1, n + 1))):
            failures.append(("coverage", n))
        if not oracles.hamiltonian_cycle_in(seq, oracles.preimage_adjacent):
            failures.append(("adjacency", n))
        if run(["perm", "verify", "--n", str(n), "--in", str(path)]) != 0:
            failures.append(("verify", n))
    capsys.readouterr()
    disagreements = 0
    for n in range(1, 7):
        perms = list(permutations(range(1, n + 1)))
        disagreements += sum(kg_perm_adjacent_by_quotient(s, t) != oracles.preimage_adjacent(s, t)
                             for s in perms for t in perms)
    ok = not failures and disagreements == 0
    report_line(6, ok, f"perm cycles n=3..7 valid under preimage adjacency; shortcut disagreements n<=6="
                       f"{disagreements}; failures={failures}")
    assert ok


def test_criterion_7_indecomposable_counts(report_line):
    expected = [1, 1, 3, 13, 71, 461, 3447, 29093]
    got = [count_indecomposable(n) for n in range(1, 9)]
    brute = [sum(1 for p in permutations(range(1, n + 1)) if not any(max(p[:k]) == k for k in range(1, n)))
             for n in range(1, 9)]
    inequality = all(factorial(n) - count_indecomposable(n)
                     <= factorial(n) * sum(Fraction(1, comb(n, p)) for p in range(1, n))
                     for n in range(2, 11))
    monotone = True
    for k in range(1, 6):
        reports = [density_report(n, k) for n in range(2, 20)]
        ratios = [r.ratio for r in reports]
        met = [r.threshold_met for r in reports]
        monotone &= ratios == sorted(ratios) and met == sorted(met)
    ok = got == expected == brute and inequality and monotone
    report_line(7, ok, f"I(1..8)={got}, brute force agrees={brute == expected}, "
                       f"decomposable bound 2<=n<=10={inequality}, density monotone={monotone}")
    assert ok


def _rejected(lines, n):
    report = verify_kneser_cycle(lines, n)
    return not report.passed and any(not c.passed and c.witness is not None for c in report.checks)


def test_criterion_8_mutations(capsys, tmp_path, report_line):
    escaped = []
    tried = 0
    for n in (6, 7, 8):
        buf = io.StringIO()
        build_hamiltonian(n).write(buf)
        lines = buf.getvalue().splitlines()
        header, body = lines[0], lines[1:]
        L = len(body)
        for i, j in combinations(range(L), 2):
            mutated = list(body)
            mutated[i], mutated[j] = mutated[j], mutated[i]
            tried += 1
            if not _rejected([header] + mutated, n):
                escaped.append(("swap", n, i, j))
        for i in range(L + 1):
            for j in range(L):
                mutated = body[:i] + [body[j]] + body[i:]
                tried += 1
                if not _rejected([header] + mutated, n):
                    escaped.append(("duplicate", n, i, j))
        for i in range(L):
            tried += 1
            if not _rejected([header] + body[:i] + body[i + 1:], n):
                escaped.append(("delete", n, i))
    # the same holds through the command line: a mutated file exits 1 with a named failing check
    path = tmp_path / "bad.txt"
    buf = io.StringIO()
    build_hamiltonian(9).write(buf)
    lines = buf.getvalue().splitlines()
    lines[3], lines[4] = lines[4], lines[3]
    path.write_text("\n".join(lines) + "\n")
    code = run(["verify", "--n", "9", "--in", str(path)])
    cli_ok = code == 1 and "FAIL" in capsys.readouterr().out
    ok = not escaped and cli_ok
    report_line(8, ok, f"{tried} swap/duplicate/deletion mutations for n=6..8 all rejected with a witness="
                       f"{not escaped}; CLI exit 1 on mutated file={cli_ok}")
    assert ok
