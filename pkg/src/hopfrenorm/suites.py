"""Property suites behind ``hopfrenorm verify`` and the acceptance tests.

Each suite returns a list of :class:`Check` records; a suite passes when
every check does.  All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import descent as dsc
from .characters import (
    LinMap,
    conv_inverse,
    convolve,
    is_character,
    is_n_connected,
)
from .fixtures import ladder_exponential, ladder_poles, random_polar
from .hopf import (
    LADDERS,
    ROOTED_TREES,
    UNIT,
    Forest,
    HopfElement,
    antipode,
    antipode_forest,
    coproduct,
    enumerate_basis,
    forest_coproduct,
    ladder,
)
from .renorm import (
    bogoliubov_decompose,
    exp_decompose,
    fixed_point_holds,
    is_polar_pair,
    zassenhaus_components,
    zassenhaus_counterterm,
    beta,
)
from .series import LaurentSeries, r_minus, r_plus, rb_check


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}{extra} [{self.seconds:.2f}s]"


def _run(name: str, fn: Callable[[], tuple[bool, str] | bool]) -> Check:
    t0 = time.perf_counter()
    try:
        out = fn()
    except Exception as exc:  # a raised identity failure is a failed check
        return Check(name, False, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0)
    ok, detail = out if isinstance(out, tuple) else (out, "")
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


# -- Rota-Baxter ----------------------------------------------------------

def random_series(rng: random.Random, lo: int = -5, hi: int = 5) -> LaurentSeries:
    coeffs = {k: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
              for k in range(lo, hi + 1) if rng.random() < 0.7}
    return LaurentSeries(coeffs, cap=hi + 1, floor=lo)


def rota_baxter_suite(seed: int = 1, pairs: int = 1000, window: tuple[int, int] = (-5, 5)) -> list[Check]:
    rng = random.Random(seed)
    samples = [(random_series(rng, *window), random_series(rng, *window)) for _ in range(pairs)]

    def identity():
        bad = sum(1 for x, y in samples if not rb_check(x, y))
        return bad == 0, f"{pairs} pairs, {bad} failures"

    def projections():
        for x, _ in samples[:200]:
            m, p = r_minus(x), r_plus(x)
            if not (r_minus(m) == m and r_plus(p) == p and r_minus(p).is_zero()
                    and m + p == x):
                return False
        return True

    def subalgebras():
        for x, y in samples[:200]:
            if not (r_minus(x) * r_minus(y)).is_polar():
                return False
            if not (r_plus(x) * r_plus(y)).is_holomorphic():
                return False
        return True

    return [
        _run("rota-baxter identity", identity),
        _run("R- and R+ complementary projections", projections),
        _run("polar and holomorphic parts are subalgebras", subalgebras),
    ]


# -- Hopf axioms ------------------------------------------------------------

def _tensor(pairs) -> dict:
    out: dict = {}
    for k, v in pairs:
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def coassociative(f: Forest) -> bool:
    left = _tensor(((a, b, r), m * n) for l, r, m in coproduct(f) for a, b, n in coproduct(l))
    right = _tensor(((l, a, b), m * n) for l, r, m in coproduct(f) for a, b, n in coproduct(r))
    return left == right


def coproduct_multiplicative(f: Forest, g: Forest) -> bool:
    lhs = forest_coproduct(f * g)
    rhs = _tensor(((a * c, b * d), m * n) for a, b, m in coproduct(f) for c, d, n in coproduct(g))
    return lhs == rhs


def antipode_axioms(f: Forest) -> bool:
    unit_val = HopfElement({UNIT: 1}) if not f else HopfElement()
    left = HopfElement()
    right = HopfElement()
    for l, r, m in coproduct(f):
        left = left + antipode_forest(l) * HopfElement({r: m})
        right = right + HopfElement({l: m}) * antipode_forest(r)
    twice = antipode(antipode_forest(f))
    return left == unit_val and right == unit_val and twice == HopfElement({f: 1})


def graded(f: Forest) -> bool:
    n = f.degree
    return (all(l.degree + r.degree == n for l, r, _ in coproduct(f))
            and all(x.degree == n for x, _ in antipode_forest(f)))


def ladder_closed_form(n: int) -> bool:
    expected = {(Forest((ladder(k),)) if k else UNIT, Forest((ladder(n - k),)) if n - k else UNIT): 1
                for k in range(n + 1)}
    return forest_coproduct(Forest((ladder(n),))) == expected


def hopf_axiom_suite(tree_degree: int = 6, ladder_degree: int = 8) -> list[Check]:
    checks = []
    for family, N in ((ROOTED_TREES, tree_degree), (LADDERS, ladder_degree)):
        forests = [f for n in range(N + 1) for f in enumerate_basis(n, family)]

        def pairs():
            return [(f, g) for f in forests for g in forests if f.degree + g.degree <= N]

        checks += [
            _run(f"{family}: coassociativity (deg <= {N})",
                 lambda: all(coassociative(f) for f in forests)),
            _run(f"{family}: coproduct is an algebra morphism (deg <= {N})",
                 lambda: all(coproduct_multiplicative(f, g) for f, g in pairs())),
            _run(f"{family}: antipode axioms and S^2 = id (deg <= {N})",
                 lambda: all(antipode_axioms(f) for f in forests)),
            _run(f"{family}: grading of coproduct and antipode (deg <= {N})",
                 lambda: all(graded(f) for f in forests)),
        ]
    checks.append(_run(f"ladder coproduct closed form (n <= {ladder_degree})",
                       lambda: all(ladder_closed_form(n) for n in range(1, ladder_degree + 1))))
    return checks


# -- decomposition agreement ------------------------------------------------

def theorem_characters(seed: int = 1, count: int = 50, N: int = 5,
                       ladder_degrees: tuple[int, ...] = (5, 6)) -> list[tuple[str, LinMap]]:
    out = []
    for n in ladder_degrees:
        out.append((f"ladder-exponential N={n}", ladder_exponential(n)))
        out.append((f"ladder-poles N={n}", ladder_poles(n)))
    for i in range(count):
        out.append((f"random rooted N={N} #{i}", random_polar(N, seed * 100003 + i)))
    return out


def check_character(phi: LinMap) -> tuple[bool, str]:
    """Agreement, polarity, multiplicativity and fixed point for one character."""
    bog = bogoliubov_decompose(phi)
    results = {}
    pairs = {"bogoliubov": (bog.phi_minus, bog.phi_plus)}
    for mode, name in (("plain", "zassenhaus"), ("accelerated", "accelerated")):
        _, m, p = exp_decompose(phi, mode)
        pairs[name] = (m, p)
    ref_m, ref_p = pairs["bogoliubov"]
    for name in ("zassenhaus", "accelerated"):
        m, p = pairs[name]
        bad = ref_m.first_mismatch(m) or ref_p.first_mismatch(p)
        if bad is not None:
            return False, f"{name} differs at {bad.code()}"
    results["polar"] = all(is_polar_pair(m, p) for m, p in pairs.values())
    results["characters"] = all(is_character(m) and is_character(p) for m, p in pairs.values())
    results["fixed point"] = fixed_point_holds(phi, bog)
    results["birkhoff product"] = convolve(conv_inverse(bog.phi_minus), bog.phi_plus).equals(phi)
    failed = [k for k, v in results.items() if not v]
    return not failed, ", ".join(failed)


def theorem_suite(seed: int = 1, count: int = 50, N: int = 5,
                  ladder_degrees: tuple[int, ...] = (5, 6)) -> list[Check]:
    chars = theorem_characters(seed, count, N, ladder_degrees)

    def run_all():
        for label, phi in chars:
            ok, why = check_character(phi)
            if not ok:
                return False, f"{label}: {why}"
        return True, f"{len(chars)} characters"

    return [_run("Bogoliubov = plain = accelerated; polarity; multiplicativity; fixed point", run_all)]


def telescoping(phi: LinMap) -> tuple[bool, str]:
    from .renorm import exp_factorize
    plain = exp_factorize(phi, "plain")
    accel = exp_factorize(phi, "accelerated")
    for k, res in enumerate(plain.residuals, start=1):
        if not is_n_connected(res, k + 1):
            return False, f"plain level {k} not {k + 1}-connected"
    for k, res in enumerate(accel.residuals, start=1):
        if not is_n_connected(res, 2 ** k):
            return False, f"accelerated level {k} not {2 ** k}-connected"
    return True, f"{len(plain.residuals)} plain vs {len(accel.residuals)} accelerated levels"


def telescoping_suite(seed: int = 1, count: int = 5, N: int = 6) -> list[Check]:
    chars = [ladder_poles(N), ladder_exponential(N)] + \
        [random_polar(N, seed * 7919 + i) for i in range(count)]

    def levels():
        from .renorm import exp_factorize
        phi = chars[0]
        p = exp_factorize(phi, "plain")
        a = exp_factorize(phi, "accelerated")
        ok = len(p.residuals) == N and len(a.residuals) == (N).bit_length()
        return ok, f"N={N}: {len(p.residuals)} plain, {len(a.residuals)} accelerated"

    def all_tele():
        for phi in chars:
            ok, why = telescoping(phi)
            if not ok:
                return False, why
        return True

    return [_run("connectedness telescoping", all_tele), _run("level counts", levels)]


# -- descent algebra --------------------------------------------------------

SERIES = [
    ("left", dsc.LEFT, dsc.PLAIN),
    ("right", dsc.RIGHT, dsc.PLAIN),
    ("accel-left", dsc.LEFT, dsc.ACCELERATED),
    ("accel-right", dsc.RIGHT, dsc.ACCELERATED),
]


def relabel(t: dict, perm: tuple) -> dict:
    return {tuple(perm[y - 1] for y in w): v for w, v in t.items()}


def lie_images(z: dsc.DescentElement, n: int, direct_up_to: int = 5) -> bool:
    """act_on_word(z, w) is a Lie element for every word w on n distinct letters."""
    base = tuple(range(1, n + 1))
    image = dsc.act_on_word(z, base)
    if not dsc.is_lie_element(image):
        return False
    for w in itertools.permutations(base):
        got = dsc.act_on_word(z, w)
        if n <= direct_up_to:
            if not dsc.is_lie_element(got):
                return False
        elif got != relabel(image, w):
            # the action commutes with renaming letters, so Lie-ness transfers
            return False
    return True


def descent_suite(weight: int = 8, internal: int = 6) -> list[Check]:
    checks = []
    N = weight
    ident = dsc.identity_series(N)
    for label, side, mode in SERIES:
        blocks = dsc.zassenhaus_blocks(N, side, mode)
        comps = dsc.zassenhaus(N, side, mode)
        checks.append(_run(f"{label}: product of exponentials = Id (weight <= {N})",
                           lambda b=blocks, s=side: dsc.exp_product(b, N, s) == ident))
        checks.append(_run(f"{label}: primitivity of components and blocks",
                           lambda c=comps, b=blocks: all(dsc.is_primitive(x) for x in c + b)))

        def unitri(c=comps):
            gens = {i + 1: z for i, z in enumerate(c)}
            for n in range(1, N + 1):
                cs, rows = dsc.word_matrix(n, gens)
                if not dsc.is_unitriangular(rows, cs):
                    return False, f"weight {n}"
            return True
        checks.append(_run(f"{label}: word matrix unitriangular (weight <= {N})", unitri))

    S = dsc.antipode_series(internal)
    Z = dsc.zassenhaus(internal, dsc.LEFT)
    Zt = dsc.zassenhaus(internal, dsc.RIGHT)
    checks.append(_run(f"S o (-Z~_n) = Z_n (n <= {internal})",
                       lambda: all(dsc.internal_product(S.component(n), -Zt[n - 1]) == Z[n - 1]
                                   for n in range(1, internal + 1))))
    checks.append(_run(f"S o S = Id componentwise (n <= {internal})",
                       lambda: all(dsc.internal_product(S.component(n), S.component(n)) == dsc.B(n)
                                   for n in range(1, internal + 1))))

    def quasi():
        scalars = {}
        for label, side, mode in SERIES:
            comps = dsc.zassenhaus(internal, side, mode)
            for n, z in enumerate(comps, start=1):
                c = dsc.quasi_idempotence_scalar(z)
                if c is None:
                    return False, f"{label} Z_{n} not quasi-idempotent"
                scalars[(label, n)] = c
        return True, "scalars " + " ".join(f"{n}:{scalars[('left', n)]}" for n in range(1, internal + 1))
    checks.append(_run(f"quasi-idempotence Z_n o Z_n = c_n Z_n (n <= {internal})", quasi))

    def lie():
        for label, side, mode in SERIES:
            comps = dsc.zassenhaus(internal, side, mode)
            for n, z in enumerate(comps, start=1):
                if not lie_images(z, n):
                    return False, f"{label} Z_{n}"
        return True
    checks.append(_run(f"act_on_word(Z_n, w) is Lie for distinct letters (n <= {internal})", lie))

    def scalar_on_brackets():
        found = []
        for label, side, mode in SERIES:
            comps = dsc.zassenhaus(internal, side, mode)
            for n, z in enumerate(comps, start=1):
                c = None
                words = itertools.permutations(range(1, n + 1)) if n <= 4 else [tuple(range(1, n + 1))]
                for w in words:
                    lie_word = dsc.left_bracketing(w)
                    got = dsc.act_on_tensor(z, lie_word)
                    if c is None:
                        w0, v0 = next(iter(lie_word.items()))
                        c = Fraction(got.get(w0, 0)) / v0
                    if got != dsc.tensor_scale(lie_word, c):
                        return False, f"{label} Z_{n}"
                if label == "left":
                    found.append(f"{n}:{c}")
        return True, "scalars " + " ".join(found)
    checks.append(_run(f"Z_n is scalar on bracketed Lie words (n <= {internal})", scalar_on_brackets))

    def dynkin_gen():
        D = {i + 1: d for i, d in enumerate(dsc.dynkin(N))}
        for n in range(1, N + 1):
            cs, rows = dsc.word_matrix(n, D)
            diag = all(rows[i][i] != 0 for i in range(len(cs)))
            if not diag or any(rows[i][j] for i in range(len(cs)) for j in range(i)):
                return False, f"weight {n}"
        return True
    checks.append(_run(f"Dynkin words triangular and invertible (weight <= {N})", dynkin_gen))
    return checks


def dynkin_suite(n_max: int = 4) -> list[Check]:
    D = dsc.dynkin(n_max)

    def brackets():
        for n in range(1, n_max + 1):
            letters = tuple(range(1, n + 1))
            for k in range(1, n + 1):
                for w in itertools.product(letters[:k], repeat=n):
                    if dsc.act_on_word(D[n - 1], w) != dsc.left_bracketing(w):
                        return False, f"word {w}"
        return True

    def transpose():
        # the same element on T*(X) is the transposed bracketing
        for n in range(1, n_max + 1):
            words = list(itertools.permutations(range(1, n + 1)))
            for u in words:
                dual = dsc.act_on_dual_word(D[n - 1], u)
                for w in words:
                    if dual.get(w, 0) != dsc.left_bracketing(w).get(u, 0):
                        return False, f"entry {u},{w}"
        return True

    return [
        _run(f"S*grading acts as left bracketing on T(X) (n <= {n_max}, exhaustive)", brackets),
        _run(f"on T*(X) it is the transposed bracketing (n <= {n_max})", transpose),
    ]


# -- bridge ------------------------------------------------------------------

def bridge_character(phi: LinMap, n_max: int = 5) -> tuple[bool, str]:
    from .renorm import exp_factorize
    bog = bogoliubov_decompose(phi)
    fact = exp_factorize(phi, "plain")
    comps = zassenhaus_counterterm(phi, bog, fact)
    for n in range(1, min(n_max, phi.H.N) + 1):
        if not comps[n - 1].equals(fact.factors_minus[n - 1]):
            return False, f"Z_{n}"
    # accelerated and right-handed analogues
    accel = exp_factorize(phi, "accelerated")
    minus_inv = conv_inverse(bog.phi_minus)
    for m, (c, lam) in enumerate(zip(zassenhaus_components(minus_inv, "left", "accelerated"),
                                     accel.factors_minus), start=1):
        if not c.equals(lam):
            return False, f"accelerated block {m}"
    for n, (c, lam) in enumerate(zip(zassenhaus_components(bog.phi_plus, "right", "plain"),
                                     fact.factors_plus), start=1):
        if not c.equals(lam):
            return False, f"phi_+ o Z~_{n}"
    beta(phi, bog)  # raises on any disagreement
    return True, ""


def alpha_morphism(H_degree: int = 5, comp_degree: int = 4, seed: int = 1, trials: int = 20) -> tuple[bool, str]:
    from .hopf import HopfAlgebra
    rng = random.Random(seed)
    H = HopfAlgebra(ROOTED_TREES, H_degree)

    def rand_elem(total: int) -> dsc.DescentElement:
        terms = {}
        for _ in range(3):
            w = rng.randint(0, total)
            comps = dsc.compositions(w)
            terms[rng.choice(comps)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return dsc.DescentElement(terms)

    for _ in range(trials):
        a = rand_elem(rng.randint(0, H_degree))
        b = rand_elem(H_degree - max(a.weights(), default=0))
        if not dsc.alpha_H(a * b, H).equals(dsc.alpha_H(a, H) * dsc.alpha_H(b, H)):
            return False, f"convolution {a} , {b}"
    for n in range(1, comp_degree + 1):
        elems = [dsc.B(*c) for c in dsc.compositions(n)]
        for a in elems:
            for b in elems:
                lhs = dsc.alpha_H(dsc.internal_product(a, b), H)
                if not lhs.equals(dsc.alpha_H(a, H).compose(dsc.alpha_H(b, H))):
                    return False, f"composition {a} o {b}"
    ident = dsc.alpha_H(dsc.identity_series(H_degree), H)
    if not ident.equals(dsc.identity_endomorphism(H)):
        return False, "alpha_H(Id) != Id_H"
    return True, ""


def bridge_suite(seed: int = 1, count: int = 50, N: int = 5, n_max: int = 5,
                 ladder_degrees: tuple[int, ...] = (5, 6)) -> list[Check]:
    chars = theorem_characters(seed, count, N, ladder_degrees)

    def run_all():
        for label, phi in chars:
            ok, why = bridge_character(phi, n_max)
            if not ok:
                return False, f"{label}: {why}"
        return True, f"{len(chars)} characters"

    return [
        _run(f"counterterm factors and beta bridge (n <= {n_max})", run_all),
        _run("alpha_H morphism for convolution and composition",
             lambda: alpha_morphism(min(N, 5), 4, seed)),
    ]


def negative_control_suite() -> list[Check]:
    def bar_not_character():
        from .characters import is_character as isc
        fixtures = [ladder_poles(4), ladder_exponential(4), random_polar(4, 1)]
        failing = [phi for phi in fixtures if not isc(bogoliubov_decompose(phi).phi_bar)]
        return bool(failing), f"{len(failing)}/{len(fixtures)} fixtures have non-multiplicative phi_bar"
    return [_run("preparation map is not a character", bar_not_character)]


SUITES = ("rota-baxter", "hopf-axioms", "theorem", "zassenhaus", "beta", "all")


def run_suite(name: str, degree: int = 5, seed: int = 1, count: int = 50) -> list[Check]:
    """Dispatch for the CLI; sizes scale with ``degree`` within the caps."""
    if name not in SUITES:
        raise KeyError(name)
    out: list[Check] = []
    if name in ("rota-baxter", "all"):
        out += rota_baxter_suite(seed)
    if name in ("hopf-axioms", "all"):
        out += hopf_axiom_suite(min(degree, 6), min(degree + 2, 8))
    if name in ("theorem", "all"):
        out += theorem_suite(seed, count, degree, (degree, degree + 1))
        out += telescoping_suite(seed, 3, degree + 1)
        out += negative_control_suite()
    if name in ("zassenhaus", "all"):
        out += descent_suite(min(degree + 3, 8), min(degree + 1, 6))
        out += dynkin_suite(min(degree, 4))
    if name in ("beta", "all"):
        out += bridge_suite(seed, count, degree, degree, (degree, degree + 1))
    return out
