"""Desk-scale verification suites behind `rtcnkit verify`.

Each suite re-derives a family of identities by exhaustive enumeration or
fixed-seed sampling and reports one `CheckResult` per check.  The suites
mirror the package's acceptance gate; any failure carries a minimal
counterexample in the text grammars.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass

from . import boat as boat_mod
from . import containment as contain_mod
from . import stats as stats_mod
from . import treeperm as treeperm_mod
from .codecs import format_object, format_perm, format_rtcn, parse_object, parse_rtcn
from .core import (
    DecisionVector,
    KEEP,
    Permutation,
    PhyloTree,
    RankArray,
    TranspositionSeq,
    validate_boat,
)
from .enumeration import (
    containing_count,
    enumerate_codes,
    enumerate_ranked_trees,
    rt_count,
    rtc_count,
    rtc_count_by_branching,
    sample_uniform,
)

SUITES = ("counts", "boat", "treeperm", "contain", "stats", "codecs")

DEFAULT_SEED = 20240825

EXPECTED_TOTALS = {2: 1, 3: 6, 4: 108, 5: 4320, 6: 324000}

GOLDEN_NETWORK = "rtcn 6: R 1 5 4; B 1 2; R 1 2 4; R 2 3 1; B 1 2"
GOLDEN_STEPS = [(1, 5, 4, 1, 4, 1, 4), (1, 2, 4, 1, 2, 1, 3), (2, 3, 1, 1, 2, 2, 1)]
GOLDEN_TRANSPOSITIONS = ((1, 4), (3, 5), (4, 5))


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        mark = "ok" if self.passed else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{mark} [{self.suite}] {self.name}{tail}"


def _result(suite, name, passed, detail=""):
    return CheckResult(suite, name, passed, detail)


def check_counts(max_leaves=6):
    """Enumeration totals and their branching stratification."""
    out = []
    for n in range(2, max_leaves + 1):
        strata = Counter(code.branching_count for code in enumerate_codes(n))
        total = sum(strata.values())
        expect = EXPECTED_TOTALS.get(n, rtc_count(n))
        out.append(_result(
            "counts", f"enumeration total at {n} leaves", total == expect == rtc_count(n),
            f"counted {total}, expected {expect}"))
        bad_b = [b for b in range(1, n)
                 if strata.get(b, 0) != rtc_count_by_branching(n, b)]
        out.append(_result(
            "counts", f"branching stratification at {n} leaves", not bad_b,
            f"mismatched branching counts {bad_b}" if bad_b else
            f"all {n - 1} strata match"))
    return out


def check_boat(max_leaves=5):
    """Two-sided boat bijection and the return-count identity."""
    out = []
    for n in range(2, max_leaves + 1):
        codes = list(enumerate_codes(n))
        images = []
        bad = None
        for code in codes:
            b = boat_mod.rtcn_to_boat(code)
            if validate_boat(b):
                bad = f"invalid image for {format_rtcn(code)}"
                break
            if boat_mod.boat_to_rtcn(b) != code:
                bad = f"round trip broke on {format_rtcn(code)}"
                break
            if boat_mod.max_rank_return_count(b) != code.branching_count - 1:
                bad = f"return-count identity broke on {format_rtcn(code)}"
                break
            images.append(b)
        if bad is None and len(set(images)) != len(codes):
            bad = "map is not injective"
        if bad is None and set(images) != set(boat_mod.enumerate_boats(n)):
            bad = "image differs from the valid boat sequences"
        out.append(_result("boat", f"bijection at {n} leaves", bad is None,
                           bad or f"{len(codes)} codes round-trip"))
    return out


def check_treeperm(max_leaves=5):
    """Tree-permutation bijection, cycle law, factorization, golden case."""
    out = []
    for n in range(2, max_leaves + 1):
        bad = None
        seen = set()
        for code in enumerate_codes(n):
            tree, perm = treeperm_mod.rtcn_to_treeperm(code)
            if treeperm_mod.treeperm_to_rtcn(tree, perm) != code:
                bad = f"round trip broke on {format_rtcn(code)}"
                break
            k = code.reticulation_count
            if treeperm_mod.cycle_count(perm) != n - 1 - k:
                bad = f"cycle law broke on {format_rtcn(code)}"
                break
            seen.add((tree, perm))
        if bad is None and len(seen) != rtc_count(n):
            bad = "map is not injective"
        if bad is None and len(seen) != rt_count(n) * math.factorial(n - 1):
            bad = "image misses some (tree, permutation) pairs"
        out.append(_result("treeperm", f"bijection at {n} leaves", bad is None,
                           bad or "round trips, cycle law, full image"))

    golden = parse_rtcn(GOLDEN_NETWORK)
    tree, steps = treeperm_mod.replacement_steps(golden)
    got = [s.as_tuple() for s in steps]
    ok = got == GOLDEN_STEPS
    _, perm = treeperm_mod.rtcn_to_treeperm(golden)
    want_perm = treeperm_mod.transpositions_to_perm(
        TranspositionSeq(5, GOLDEN_TRANSPOSITIONS))
    ok = ok and perm == want_perm
    ok = ok and treeperm_mod.perm_to_transpositions(perm).pairs == GOLDEN_TRANSPOSITIONS
    out.append(_result("treeperm", "pinned 6-leaf replacement case", ok,
                       f"steps {got}, permutation {perm.cycle_string()}"))

    for n in range(1, 7):
        bad = None
        perms = [Permutation(n, p) for p in itertools.permutations(range(1, n + 1))]
        for perm in perms:
            seq = treeperm_mod.perm_to_transpositions(perm)
            if treeperm_mod.transpositions_to_perm(seq) != perm:
                bad = f"refactorization broke on {format_perm(perm)}"
                break
            if len(seq.pairs) != n - treeperm_mod.cycle_count(perm):
                bad = f"cycle identity broke on {format_perm(perm)}"
                break
        if bad is None and n <= 5:
            products = [treeperm_mod.transpositions_to_perm(s)
                        for s in _ascending_sequences(n)]
            if len(products) != len(perms) or len(set(products)) != len(perms):
                bad = "ascending factorizations are not in bijection"
        out.append(_result("treeperm", f"factorization at degree {n}", bad is None,
                           bad or "unique ascending factorization"))
    return out


def _ascending_sequences(n):
    """All transposition sequences with strictly increasing lower entries."""
    domains = [[None] + [(x, y) for y in range(x + 1, n + 1)]
               for x in range(1, n)]
    for picks in itertools.product(*domains):
        yield TranspositionSeq(n, tuple(p for p in picks if p is not None))


def check_contain(max_leaves=5):
    """Expansion counts, the brute-force oracle, and the plain-tree bijection."""
    out = []
    for n in range(2, max_leaves + 1):
        expect = containing_count(n)
        bad = None
        for tcode in enumerate_ranked_trees(n):
            nets = []
            phylos = []
            for dec in contain_mod.enumerate_decisions(n):
                net = contain_mod.expand(tcode, dec)
                if not contain_mod.contains(tcode, net, "oracle"):
                    bad = (f"oracle rejects {format_rtcn(net)} "
                           f"expanded from {format_rtcn(tcode)}")
                    break
                if contain_mod.decisions_from_pair(tcode, net) != dec:
                    bad = f"decision decode broke on {format_rtcn(net)}"
                    break
                p = contain_mod.pair_to_phylo(tcode, net)
                if contain_mod.phylo_to_pair(tcode, p) != net:
                    bad = f"plain-tree round trip broke on {format_rtcn(net)}"
                    break
                nets.append(net)
                phylos.append(p)
            if bad:
                break
            if len(set(nets)) != expect:
                bad = f"{format_rtcn(tcode)} expands to {len(set(nets))} networks"
                break
            if len(set(phylos)) != expect:
                bad = f"{format_rtcn(tcode)} reaches {len(set(phylos))} plain trees"
                break
        out.append(_result("contain", f"bijection at {n} leaves", bad is None,
                           bad or f"{expect} networks and plain trees per tree"))
    return out


def check_stats(seed=DEFAULT_SEED, leaves=10**4, count=10**5):
    """Moment and normality tolerances of the return-count experiment."""
    samples = stats_mod.boat_return_experiment(leaves, count, seed)
    rep = stats_mod.normality_report(samples, leaves, seed=seed)
    se = (rep.exact_variance / rep.count) ** 0.5
    out = [
        _result("stats", "sample mean within tolerance", rep.mean_ok,
                f"sample {rep.sample_mean:.4f}, exact {rep.exact_mean:.4f}, "
                f"allowed slack {stats_mod.MEAN_SE_FACTOR * se:.4f}"),
        _result("stats", "sample variance within tolerance", rep.variance_ok,
                f"sample {rep.sample_variance:.4f}, exact {rep.exact_variance:.4f}, "
                f"allowed {stats_mod.VARIANCE_REL_TOL:.0%}"),
        _result("stats", "normality of standardized samples", rep.ks_ok,
                f"KS distance {rep.ks_distance:.4f}, allowed {stats_mod.KS_TOL}"),
    ]
    return out


def random_objects(count, seed):
    """A reproducible mixed stream of objects across every text grammar."""
    rng = random.Random(seed)
    kinds = ["rtcn", "boat", "perm", "phylo", "dec"]
    for _ in range(count):
        kind = rng.choice(kinds)
        n = rng.randrange(2, 26)
        if kind == "rtcn":
            yield sample_uniform(n, rng=rng)
        elif kind == "boat":
            yield _random_boat(n, rng)
        elif kind == "perm":
            image = list(range(1, n + 1))
            rng.shuffle(image)
            yield Permutation(n, tuple(image))
        elif kind == "phylo":
            yield _random_phylo(n, rng)
        else:
            yield _random_decisions(n, rng)


def _random_boat(people, rng):
    row1 = []
    for i in range(1, people):
        m = people - i + 1
        pair = sorted(rng.sample(range(1, m + 1), 2))
        row1.append(tuple(pair))
    row2 = tuple(rng.randrange(1, i + 2) for i in range(1, people - 1))
    return boat_mod.rank_unmap(RankArray(people, tuple(row1), row2))


def _random_phylo(leaves, rng):
    shapes = list(range(1, leaves + 1))
    while len(shapes) > 1:
        i, j = rng.sample(range(len(shapes)), 2)
        a, b = shapes[i], shapes[j]
        shapes = [s for t, s in enumerate(shapes) if t not in (i, j)]
        shapes.append((a, b))
    return PhyloTree.build(leaves, shapes[0])


def _random_decisions(leaves, rng):
    entries = []
    for k in range(1, leaves):
        options = [KEEP] + [(i, s) for i in range(1, k) for s in ("L", "R")]
        entries.append(rng.choice(options))
    return DecisionVector(leaves, tuple(entries))


def check_codecs(count=10**5, seed=DEFAULT_SEED):
    """Byte-identical parse/format round trips on a random object stream."""
    bad = None
    seen = 0
    for obj in random_objects(count, seed):
        text = format_object(obj)
        back = parse_object(text)
        if back != obj or format_object(back) != text:
            bad = f"round trip broke on {text!r}"
            break
        seen += 1
    return [_result("codecs", f"round trips on {count} random objects",
                    bad is None, bad or f"{seen} objects stable")]


def run_suite(suite, max_leaves=None, seed=DEFAULT_SEED):
    """Run one suite (or "all"); returns the list of check results."""
    if suite == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s, max_leaves=max_leaves, seed=seed))
        return out
    if suite == "counts":
        return check_counts(max_leaves or 6)
    if suite == "boat":
        return check_boat(max_leaves or 5)
    if suite == "treeperm":
        return check_treeperm(max_leaves or 5)
    if suite == "contain":
        return check_contain(max_leaves or 5)
    if suite == "stats":
        return check_stats(seed=seed)
    if suite == "codecs":
        return check_codecs(seed=seed)
    raise ValueError(f"unknown suite {suite!r}")
