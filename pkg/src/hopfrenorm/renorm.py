"""Birkhoff decomposition of characters: the Bogoliubov recursion, the
exponential (Zassenhaus-type) recursions in the character group, and the
bridge to the descent algebra (universal Zassenhaus factors, beta function).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .characters import (
    ONE,
    Character,
    InfChar,
    LinMap,
    NotConnected,
    conv_exp,
    conv_inverse,
    convolve,
    degree_range,
    graded_component,
    is_n_connected,
    precompose,
    unit_map,
    zero_map,
)
from .descent import (
    ACCELERATED,
    LEFT,
    PLAIN,
    RIGHT,
    alpha_H,
    change_of_basis,
    dynkin,
    dyadic_blocks,
    zassenhaus_blocks,
)
from .hopf import UNIT, Forest, coproduct
from .series import r_minus, r_plus

log = logging.getLogger(__name__)


@dataclass
class BirkhoffPair:
    phi_minus: LinMap
    phi_plus: LinMap
    phi_bar: LinMap


@dataclass
class ExpFactorization:
    """Exponents of phi = exp(l1-) * ... * exp(lk-) * exp(lk+) * ... * exp(l1+).

    ``blocks[i]`` is the degree range stripped at level i+1; ``residuals[i]``
    is the character left after that level.
    """
    mode: str
    factors_minus: list[InfChar]
    factors_plus: list[InfChar]
    blocks: list[tuple[int, int]]
    residuals: list[LinMap] = field(default_factory=list)

    def nontrivial_levels(self) -> int:
        return sum(1 for m, p in zip(self.factors_minus, self.factors_plus)
                   if m.values or p.values)


def bogoliubov_decompose(phi: LinMap) -> BirkhoffPair:
    """Solve phi_bar = phi_- * (phi - e), phi_pm = e +- R_pm(phi_bar) degree by degree."""
    H = phi.H
    if not phi(UNIT).equals(ONE):
        raise ValueError("character must take the value 1 on the unit")
    e = unit_map(H)
    if phi.equals(e):
        return BirkhoffPair(e, e, zero_map(H))
    minus = {UNIT: ONE}
    plus = {UNIT: ONE}
    bar = {}
    for n in range(1, H.N + 1):
        for x in H.basis(n):
            acc = phi(x)
            for left, right, m in coproduct(x):
                # left = 1 gives phi(x); right = 1 vanishes in phi - e
                if not left or not right:
                    continue
                a = minus.get(left)
                if a is None:
                    continue
                term = a * phi(right)
                acc = acc + (term.scale(m) if m != 1 else term)
            bar[x] = acc
            minus[x] = -r_minus(acc)
            plus[x] = r_plus(acc)
    return BirkhoffPair(Character(H, minus), Character(H, plus), LinMap(H, bar))


def zeta_extract(phi: LinMap, n: int) -> InfChar:
    """Degree-n component of an n-connected character (= log(phi)_n)."""
    if not is_n_connected(phi, n):
        raise NotConnected(f"character is not {n}-connected")
    return InfChar(phi.H, graded_component(phi, n).values)


def mu_extract(phi: LinMap, m: int) -> InfChar:
    """Components of degrees 2^{m-1} .. 2^m - 1 of a 2^{m-1}-connected character."""
    n = 2 ** (m - 1)
    if not is_n_connected(phi, n):
        raise NotConnected(f"character is not {n}-connected")
    return InfChar(phi.H, degree_range(phi, n, 2 * n - 1).values)


def _split(z: InfChar) -> tuple[InfChar, InfChar]:
    return (InfChar(z.H, {x: r_minus(v) for x, v in z.values.items()}),
            InfChar(z.H, {x: r_plus(v) for x, v in z.values.items()}))


def exp_factorize(phi: LinMap, mode: str = PLAIN) -> ExpFactorization:
    """Strip exp(-l_n^-) on the left and exp(-l_n^+) on the right until the
    residual character is trivial up to the truncation degree."""
    H = phi.H
    if not phi(UNIT).equals(ONE):
        raise ValueError("character must take the value 1 on the unit")
    if mode == PLAIN:
        blocks = [(n, n) for n in range(1, H.N + 1)]
    elif mode == ACCELERATED:
        blocks = dyadic_blocks(H.N)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    fact = ExpFactorization(mode, [], [], [])
    if phi.equals(unit_map(H)):
        return fact
    current = phi
    for level, (lo, hi) in enumerate(blocks, start=1):
        if mode == PLAIN:
            z = zeta_extract(current, lo)
        else:
            z = mu_extract(current, level)
        lam_minus, lam_plus = _split(z)
        current = convolve(convolve(conv_exp(-lam_minus), current), conv_exp(-lam_plus))
        fact.factors_minus.append(lam_minus)
        fact.factors_plus.append(lam_plus)
        fact.blocks.append((lo, hi))
        fact.residuals.append(current)
    if not is_n_connected(current, H.N + 1):
        raise ArithmeticError("residual character is not trivial after the last level")
    return fact


def assemble(fact: ExpFactorization, H=None) -> tuple[LinMap, LinMap]:
    """(phi_-^{-1}, phi_+) as ordered products of the exponential factors."""
    if H is None:
        if not fact.factors_minus:
            raise ValueError("empty factorization needs an explicit Hopf algebra")
        H = fact.factors_minus[0].H
    minus_inv = unit_map(H)
    for lam in fact.factors_minus:
        minus_inv = convolve(minus_inv, conv_exp(lam))
    plus = unit_map(H)
    for lam in fact.factors_plus:
        plus = convolve(conv_exp(lam), plus)
    return minus_inv, plus


@dataclass
class TheoremReport:
    agreement: bool
    first_mismatch: Forest | None
    method: str | None
    bogoliubov: BirkhoffPair
    plain: ExpFactorization
    accelerated: ExpFactorization
    pairs: dict

    def summary(self) -> str:
        if self.agreement:
            return "all decompositions agree"
        return f"{self.method} differs at {self.first_mismatch.code()}"


def exp_decompose(phi: LinMap, mode: str = PLAIN) -> tuple[ExpFactorization, LinMap, LinMap]:
    """Factorize and assemble; returns (factorization, phi_-, phi_+)."""
    fact = exp_factorize(phi, mode)
    minus_inv, plus = assemble(fact, phi.H)
    return fact, conv_inverse(minus_inv), plus


def verify_theorem(phi: LinMap) -> TheoremReport:
    """Compare Bogoliubov, plain and accelerated decompositions exactly."""
    bog = bogoliubov_decompose(phi)
    plain, pm, pp = exp_decompose(phi, PLAIN)
    accel, am, ap = exp_decompose(phi, ACCELERATED)
    pairs = {
        "bogoliubov": (bog.phi_minus, bog.phi_plus),
        "zassenhaus": (pm, pp),
        "accelerated": (am, ap),
    }
    for name in ("zassenhaus", "accelerated"):
        for ref, got in zip(pairs["bogoliubov"], pairs[name]):
            bad = ref.first_mismatch(got)
            if bad is not None:
                return TheoremReport(False, bad, name, bog, plain, accel, pairs)
    return TheoremReport(True, None, None, bog, plain, accel, pairs)


def fixed_point_holds(phi: LinMap, pair: BirkhoffPair) -> bool:
    """phi_- = e - R_-(phi_- * (phi - e)) and phi_+ = e + R_+(phi_- * (phi - e))."""
    H = phi.H
    e = unit_map(H)
    bar = convolve(pair.phi_minus, phi - e)
    minus = e - bar.map_values(r_minus)
    plus = e + bar.map_values(r_plus)
    return pair.phi_minus.equals(minus) and pair.phi_plus.equals(plus) and pair.phi_bar.equals(bar)


def is_polar_pair(pair_minus: LinMap, pair_plus: LinMap) -> bool:
    """phi_- strictly polar and phi_+ holomorphic on every positive-degree forest."""
    for x in pair_minus.H.forests():
        if not x:
            continue
        if not pair_minus(x).is_polar() or not pair_plus(x).is_holomorphic():
            return False
    return True


# -- descent-algebra bridge ------------------------------------------------

def zassenhaus_components(mu: LinMap, side: str = LEFT, mode: str = PLAIN) -> list[LinMap]:
    """[mu o alpha_H(Z_n)] for the chosen series (blocks for the accelerated one)."""
    H = mu.H
    if H.N < 1:
        return []
    blocks = zassenhaus_blocks(H.N, side, mode)
    return [precompose(mu, alpha_H(z, H)) for z in blocks]


def zassenhaus_counterterm(phi: LinMap, pair: BirkhoffPair | None = None,
                           fact: ExpFactorization | None = None) -> list[LinMap]:
    """[phi_-^{-1} o Z_n], checked against the exponents of the plain recursion."""
    if pair is None:
        pair = bogoliubov_decompose(phi)
    if fact is None:
        fact = exp_factorize(phi, PLAIN)
    minus_inv = conv_inverse(Character.from_linmap(pair.phi_minus))
    comps = zassenhaus_components(minus_inv, LEFT, PLAIN)
    if fact.factors_minus:
        for n, (c, lam) in enumerate(zip(comps, fact.factors_minus), start=1):
            if not c.equals(lam):
                raise ArithmeticError(f"phi_-^-1 o Z_{n} differs from lambda_{n}^-")
    return comps


def beta(phi: LinMap, pair: BirkhoffPair | None = None) -> list[LinMap]:
    """beta_n = phi_- o D_n, cross-checked against the right Zassenhaus expansion."""
    if pair is None:
        pair = bogoliubov_decompose(phi)
    H = phi.H
    N = H.N
    if N < 1:
        return []
    phi_minus = pair.phi_minus
    via_dynkin = [precompose(phi_minus, alpha_H(d, H)) for d in dynkin(N)]
    right = zassenhaus_components(phi_minus, RIGHT, PLAIN)
    left_inv = zassenhaus_components(conv_inverse(Character.from_linmap(phi_minus)), LEFT, PLAIN)
    for n, (r, l) in enumerate(zip(right, left_inv), start=1):
        if not (-r).equals(l):
            raise ArithmeticError(f"-phi_- o Z~_{n} differs from phi_-^-1 o Z_{n}")
    table = change_of_basis(N)
    for n, coeffs in table.items():
        total = zero_map(H)
        for word, c in coeffs.items():
            term = unit_map(H)
            for i in word:
                term = convolve(term, right[i - 1])
            total = total + term.scale(c)
        if not total.equals(via_dynkin[n - 1]):
            raise ArithmeticError(f"beta_{n} via Dynkin differs from the Zassenhaus expansion")
    return via_dynkin
