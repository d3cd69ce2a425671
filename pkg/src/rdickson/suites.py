"""Named verification suites, golden reference data, and CSV table rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Callable

from . import classify as cl
from .classify import Check, ConjectureVerdict
from .dickson import FIRST, SECOND, RdpSpec, coefficient_poly, derivative_sequence, formal_derivative, sequence
from .permcheck import fixed_points, is_pp_prime_power, tabulate
from .ring import is_prime

DEFAULT_CAPS = {
    "fixed-points": 61,
    "cycle-types": 97,
    "periods": 31,
    "conjectures": 31,
}
SECOND_KIND_CAP = 13


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    verdicts: list[ConjectureVerdict] = field(default_factory=list)
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.hard)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.hard and not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": cl.to_jsonable(self.checks),
            "verdicts": cl.to_jsonable(self.verdicts),
            "results": cl.to_jsonable(self.results),
        }

    @classmethod
    def from_dict(cls, d: dict) -> SuiteReport:
        return cls(
            suite=d["suite"],
            checks=[Check(**c) for c in d["checks"]],
            verdicts=[ConjectureVerdict(**v) for v in d["verdicts"]],
            results=d["results"],
        )


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_prime(p)]


# -- rendering and golden data -----------------------------------------------


def render_table_csv(kind: int, modulus: int, n_lo: int, n_hi: int, xs=None, a: int = 1) -> str:
    """CSV grid with x down the rows and n across the columns."""
    xs = range(modulus) if xs is None else [x % modulus for x in xs]
    lines = ["x," + ",".join(str(n) for n in range(n_lo, n_hi + 1))]
    for x in xs:
        vals = sequence(kind, a, x, modulus, n_hi)[n_lo:]
        lines.append(f"{x}," + ",".join(map(str, vals)))
    return "\n".join(lines) + "\n"


def golden_text(name: str) -> str:
    return resources.files("rdickson.golden").joinpath(name).read_text()


def golden_sequences() -> dict:
    return json.loads(golden_text("sequences.json"))


def published_derivative_layout(n_max: int = 23) -> list[int]:
    """D_n'(1, 1) mod 3 laid out as the published reference list.

    The published list carries the recurrence seeds D_0(1, 1) and
    D_1(1, 1) at n = 0, 1 and formal derivatives from n = 2 on.
    """
    seeds = sequence(FIRST, 1, 1, 3, 1)
    return seeds + derivative_sequence(FIRST, 1, 3, n_max)[2:]


def mod24_class_value(n: int) -> int:
    """Published residue-class value of D_n'(1, 1) mod 3, or None off the listed classes."""
    r = n % 24
    if r in (2, 8, 14, 20):
        return 1
    if r in (5, 11, 17, 23):
        return 2
    if r in (3, 4, 6, 7, 9, 10, 12, 13, 15, 16, 18, 19, 21, 22):
        return 0
    return None


def suite_golden_appendix(cap: int | None = None) -> SuiteReport:
    rep = SuiteReport("golden-appendix")
    t1 = render_table_csv(FIRST, 5, 0, 23)
    rep.checks.append(Check("grid D_n(1,x) over Z_5, n=0..23", t1 == golden_text("table1_D_mod5.csv")))
    t2 = render_table_csv(FIRST, 7, 0, 47)
    rep.checks.append(Check("grid D_n(1,x) over Z_7, n=0..47", t2 == golden_text("table2_D_mod7.csv")))

    gold = golden_sequences()
    for name in ("e_prime_mod3_at_quarter", "e_prime_mod5_at_quarter", "e_prime_mod7_at_quarter"):
        g = gold[name]
        got = derivative_sequence(g["kind"], g["point"], g["modulus"], len(g["values"]) - 1)
        # independent route: formal derivative of the explicit coefficient polynomial
        oracle = [formal_derivative(coefficient_poly(RdpSpec(n, g["kind"], 1, g["modulus"])))(g["point"])
                  for n in range(len(g["values"]))]
        rep.checks.append(Check(f"sequence {name}", got == g["values"] == oracle,
                                detail=f"computed {got}"))

    published = gold["d_prime_mod3_at_1"]["values"]
    got = published_derivative_layout(len(published) - 1)
    mismatches = [n for n, (u, v) in enumerate(zip(got, published)) if u != v]
    rep.checks.append(Check("D_n'(1,1) mod 3 matches at 23 of 24 indices, deviation at n=20",
                            mismatches == [20], detail=f"mismatches at {mismatches}"))
    oracle20 = formal_derivative(coefficient_poly(RdpSpec(20, FIRST, 1, 3)))(1)
    rep.checks.append(Check("n=20 resolved by the symbolic derivative oracle and the mod-24 class rule",
                            oracle20 == got[20] == mod24_class_value(20) == 1,
                            detail=f"oracle {oracle20}, published {published[20]}"))
    rep.results["deviation"] = {"n": 20, "published": published[20], "computed": got[20]}
    return rep


# -- theorem suites ----------------------------------------------------------


def _set_check(name: str, got, want) -> Check:
    got, want = sorted(got), sorted(want)
    return Check(name, got == want, detail=f"got {got} expected {want}")


def suite_t5(cap: int | None = None) -> SuiteReport:
    rep = SuiteReport("t5")
    pp, _ = cl.scan_indices(FIRST, 5, 24)
    rep.checks.append(_set_check("D_n PP over F_5, n in [1,24]", pp, {2, 3, 6, 10, 15}))
    rep.results["pp_indices"] = list(pp)
    return rep


def suite_t7(cap: int | None = None) -> SuiteReport:
    rep = SuiteReport("t7")
    pp, _ = cl.scan_indices(FIRST, 7, 48)
    rep.checks.append(_set_check("D_n PP over F_7, n in [1,48]", pp, {2, 3, 9, 14, 15, 21}))
    rep.results["pp_indices"] = list(pp)
    return rep


def _lifting_vs_tabulation(kind: int, p: int, t_max: int, bound: int) -> Check:
    bad = []
    for t in range(1, t_max + 1):
        direct, _ = cl.scan_indices(kind, p**t, bound)
        lifted = {n for n in range(1, bound + 1) if is_pp_prime_power(n, kind, 1, p, t)}
        if set(direct) != lifted:
            bad.append(t)
    return Check(f"{'DE'[kind]}: lifting criterion equals tabulation over Z_{p}^t, t<={t_max}, n<={bound}",
                 not bad, detail=f"disagreeing t: {bad}")


def suite_ring2(cap: int | None = None) -> SuiteReport:
    rep = SuiteReport("ring2")
    bound = 96
    rep.checks.append(_set_check("D_n PP over Z_2", cl.scan_indices(FIRST, 2, bound)[0],
                                 [n for n in range(1, bound + 1) if n % 3 == 0]))
    rep.checks.append(_set_check("E_n PP over Z_2", cl.scan_indices(SECOND, 2, bound)[0],
                                 [n for n in range(1, bound + 1) if n % 3 == 2]))
    for t in range(2, 7):
        ic = cl.scan_ring(FIRST, 2, t, bound, 6)
        rep.checks.append(_set_check(f"D_n PP over Z_{2**t} iff n = 3 mod 6", ic.pp_indices,
                                     [n for n in range(1, bound + 1) if n % 6 == 3]))
        ic = cl.scan_ring(SECOND, 2, t, bound, 6)
        rep.checks.append(_set_check(f"E_n PP over Z_{2**t} iff n = 2 mod 6", ic.pp_indices,
                                     [n for n in range(1, bound + 1) if n % 6 == 2]))
    rep.checks.append(_lifting_vs_tabulation(FIRST, 2, 3, bound))
    rep.checks.append(_lifting_vs_tabulation(SECOND, 2, 3, bound))
    rep.checks.append(_set_check("CPPs over Z_2", cl.scan_indices(FIRST, 2, bound)[1] + cl.scan_indices(SECOND, 2, bound)[1], []))
    return rep


THEOREM_L4_SET = (2, 3, 5, 15, 20, 29, 39, 50, 51, 68)


def suite_ring3(cap: int | None = None) -> SuiteReport:
    rep = SuiteReport("ring3")
    bound = 72
    d_pp, d_cpp = cl.scan_indices(FIRST, 3, bound)
    rep.checks.append(_set_check("D_n PP over Z_3 iff n = 2 mod 4", d_pp,
                                 [n for n in range(1, bound + 1) if n % 4 == 2]))
    rep.checks.append(_set_check("D_n CPP over Z_3 iff n = 2,6 mod 8", d_cpp,
                                 [n for n in range(1, bound + 1) if n % 8 in (2, 6)]))
    e_pp, e_cpp = cl.scan_indices(SECOND, 3, bound)
    rep.checks.append(_set_check("E_n PP over Z_3 iff n = 2,3,5,15,20 mod 24", e_pp,
                                 [n for n in range(1, bound + 1) if n % 24 in (2, 3, 5, 15, 20)]))
    rep.checks.append(_set_check("E_n CPP over Z_3 iff n = 3,15 mod 24", e_cpp,
                                 [n for n in range(1, bound + 1) if n % 24 in (3, 15)]))
    for t in range(2, 5):
        ic = cl.scan_ring(FIRST, 3, t, bound, 24)
        rep.checks.append(_set_check(f"D_n PP over Z_{3**t} iff n = 2,14 mod 24", ic.pp_indices,
                                     [n for n in range(1, bound + 1) if n % 24 in (2, 14)]))
        ic = cl.scan_ring(SECOND, 3, t, bound, 72)
        rep.checks.append(_set_check(f"E_n PP over Z_{3**t} iff n in S", ic.pp_indices, THEOREM_L4_SET))
    rep.checks.append(_lifting_vs_tabulation(FIRST, 3, 3, bound))
    rep.checks.append(_lifting_vs_tabulation(SECOND, 3, 3, bound))
    return rep


FIXED_POINT_PRIMES = {
    "one": (13, 37, 61),
    "none": (5, 17, 29),
    "half": (7, 13, 19, 31, 37),
}


def suite_fixed_points(cap: int | None = None) -> SuiteReport:
    cap = cap or DEFAULT_CAPS["fixed-points"]
    rep = SuiteReport("fixed-points")
    primes = sorted(set(primes_between(5, cap)) | {p for ps in FIXED_POINT_PRIMES.values() for p in ps})
    for p in primes:
        rep.checks.extend(cl.fixed_point_census(p))
    # linear maps ax + 1, a not in {0, 1}
    for p in primes_between(3, min(cap, 31)):
        for a in range(2, p):
            fp = fixed_points(tabulate(lambda x: a * x + 1, p))
            if fp != [pow(1 - a, -1, p)]:
                rep.checks.append(Check(f"p={p} {a}x+1 single fixed point", False, detail=str(fp)))
    rep.checks.append(Check("linear maps ax+1 have exactly one fixed point 1/(1-a)",
                            all(c.passed for c in rep.checks if "x+1 single" in c.name)))
    return rep


def suite_cycle_types(cap: int | None = None) -> SuiteReport:
    cap = cap or DEFAULT_CAPS["cycle-types"]
    rep = SuiteReport("cycle-types")
    rep.checks.extend(cl.cycle_type_check(3, ("D_2", "D_2p", "E_3", "E_2", "D_2+x")))
    for p in primes_between(5, cap):
        rep.checks.extend(cl.cycle_type_check(p))
    rep.checks.extend(cl.sporadic_cycle_checks())
    return rep


HARD_PERIODS = {3: 18, 5: 20, 7: 21}


def suite_periods(cap: int | None = None) -> SuiteReport:
    cap = cap or DEFAULT_CAPS["periods"]
    rep = SuiteReport("periods")
    periods = {}
    for p in primes_between(3, cap):
        report, verdict = cl.derivative_quarter_period(p)
        periods[p] = report.period
        if p in HARD_PERIODS:
            rep.checks.append(Check(f"p={p} E_n'(1,1/4) minimal period {HARD_PERIODS[p]}",
                                    report.period == HARD_PERIODS[p], detail=f"measured {report.period}"))
        if verdict is not None:
            if verdict.status == "counterexample" and report.predicted:
                tail = report.terms[report.start:]
                weak = all(tail[i] == tail[i + report.predicted] for i in range(len(tail) - report.predicted))
                if weak:
                    verdict = replace(verdict, detail=verdict.detail + "; predicted value is a period but not minimal")
            rep.verdicts.append(verdict)
            rep.checks.append(Check(f"p={p} conjecture {verdict.conjecture} period", bool(report.matches_prediction),
                                    hard=False, detail=f"measured {report.period} predicted {report.predicted}"))
    for p in primes_between(5, min(cap, SECOND_KIND_CAP)):
        rep.verdicts.append(cl.derivative_full_period_verdict(p))
    rep.results["periods"] = periods
    return rep


def suite_conjectures(cap: int | None = None) -> SuiteReport:
    cap = cap or DEFAULT_CAPS["conjectures"]
    rep = SuiteReport("conjectures")
    pp_sets, cpp_sets, e_sets = {}, {}, {}
    primes = primes_between(5, cap)
    pp_scans = cl.parallel_map(cl.scan_first_kind_pp, primes)
    cpp_scans = cl.parallel_map(cl.scan_first_kind_cpp, primes)
    for p, (ic, verdict), cpp_scan in zip(primes, pp_scans, cpp_scans):
        rep.verdicts.append(verdict)
        pp_sets[p] = list(ic.pp_indices)
        missing = cl.conjectured_first_kind_pp(p) - set(ic.pp_indices)
        rep.checks.append(Check(f"p={p} CCC1 sufficiency", not missing, detail=f"missing {sorted(missing)}"))
        rep.checks.append(Check(f"p={p} CCC1 necessity", verdict.status == "confirmed-at-scale",
                                hard=p in (5, 7), detail=verdict.detail))

        ic, verdict = cpp_scan
        rep.verdicts.append(verdict)
        cpp = set(ic.cpp_indices)
        cpp_sets[p] = sorted(cpp)
        proven = {2, 2 * p, 3, 3 * p} | ({p + 1, p + 2, 2 * p + 1} if p % 12 == 1 else set())
        rep.checks.append(Check(f"p={p} CJ10C sufficiency", proven <= cpp, detail=f"missing {sorted(proven - cpp)}"))
        if p % 12 == 5:
            rep.checks.append(Check(f"p={p} D_{p + 1} is not a CPP", p + 1 not in cpp))
        if p % 12 == 7:
            rep.checks.append(Check(f"p={p} D_{p + 2} is not a CPP", p + 2 not in cpp))
        rep.checks.append(Check(f"p={p} CJ10C necessity", verdict.status == "confirmed-at-scale",
                                hard=False, detail=verdict.detail))

    for p in primes_between(5, min(cap, SECOND_KIND_CAP)):
        ic, verdict = cl.scan_second_kind_pp(p)
        rep.verdicts.append(verdict)
        e_sets[p] = list(ic.pp_indices)
        suff = {2, 3} | (set(cl.conjectured_second_kind_pp(p)) if p in (5, 7) else set())
        rep.checks.append(Check(f"p={p} E_n PP sufficiency", suff <= set(ic.pp_indices)))
        # a full-period scan settles p = 5, 7 outright
        rep.checks.append(Check(f"p={p} E_n PP set over one full period", verdict.status == "confirmed-at-scale",
                                hard=p in (5, 7), detail=verdict.detail))
        ic, verdict = cl.scan_second_kind_cpp(p)
        rep.verdicts.append(verdict)
        rep.checks.append(Check(f"p={p} E_3 is a CPP", 3 in ic.cpp_indices))
        rep.checks.append(Check(f"p={p} conjJ53", verdict.status == "confirmed-at-scale",
                                hard=False, detail=verdict.detail))
    rep.results.update(first_kind_pp=pp_sets, first_kind_cpp=cpp_sets, second_kind_pp=e_sets)
    return rep


def suite_closed_forms(cap: int | None = None) -> SuiteReport:
    rep = SuiteReport("closed-forms")
    for p in primes_between(5, min(cap or 61, 61)):
        rep.checks.extend(cl.closed_form_cross_checks(p))
    for p, t in ((2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)):
        rep.checks.extend(cl.verify_a_zero(p, t))
    return rep


SUITES: dict[str, Callable[[int | None], SuiteReport]] = {
    "t5": suite_t5,
    "t7": suite_t7,
    "ring2": suite_ring2,
    "ring3": suite_ring3,
    "fixed-points": suite_fixed_points,
    "cycle-types": suite_cycle_types,
    "periods": suite_periods,
    "conjectures": suite_conjectures,
    "closed-forms": suite_closed_forms,
    "golden-appendix": suite_golden_appendix,
}


def run_suite(name: str, cap: int | None = None) -> list[SuiteReport]:
    if name == "all":
        return [fn(cap) for fn in SUITES.values()]
    return [SUITES[name](cap)]

