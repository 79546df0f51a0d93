"""Twisted Carlitz tensor powers and their L-functions.

A ``TwistedPower`` is a pair (P, n): the nonzero twist polynomial
P in GF(q)[θ] and the tensor exponent n >= 1.  Its 1x1 τ-matrix is
P(θ) (T - θ)^n; everything observable here flows through the explicit k x k
matrix over GF(q)[T] whose (i, j) entry (1-based) is

    sum_{l=0}^{n} T^(n-l) (-1)^l C(n, l) a_{iq-j-l},

with a_* the coefficients of P (zero outside [0, deg P]).  For any
k >= (m+n)/(q-1) the determinant det(I - M U) is independent of k and equals
the global L-function L(P, n; T, U); the library always evaluates at the
minimal such k.

Rows are stored 0-based; the formula above is the 1-based indexing, so the
stored entry [i][j] is the formula at (i+1, j+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .ff import binom_mod_p
from .lfun import LFun, lfun_order_at
from .linalg import det_identity_minus_mu
from .poly import Poly

__all__ = [
    "TwistedPower",
    "MMatrix",
    "build_matrix",
    "l_function",
    "analytic_rank",
    "infinity_factor",
    "d_coefficients",
]


@dataclass(frozen=True)
class TwistedPower:
    """The pair (P, n); m = deg P and the minimal stable matrix size derive."""

    P: Poly
    n: int

    def __post_init__(self):
        if self.P.is_zero():
            raise ValueError("twist polynomial must be nonzero")
        if self.n < 1:
            raise ValueError("tensor exponent must be >= 1")

    @property
    def ctx(self):
        return self.P.ctx

    @property
    def m(self) -> int:
        return int(self.P.degree)

    @property
    def k_min(self) -> int:
        q = self.ctx.order
        return max(1, math.ceil((self.m + self.n) / (q - 1)))

    def coeff(self, i: int):
        return self.P.coeff(i)


@dataclass(frozen=True)
class MMatrix:
    """k x k matrix over GF(q)[T]; stored 0-based, built from 1-based indices."""

    q: int
    n: int
    k: int
    rows: tuple = field(repr=False)

    def entry(self, i: int, j: int) -> Poly:
        """0-based access."""
        return self.rows[i][j]


def _entry_poly(tp: TwistedPower, i1: int, j1: int) -> Poly:
    # (i1, j1) 1-based; little-endian T-coefficients, position n-l
    ctx = tp.ctx
    n = tp.n
    p = ctx.char
    coeffs = [ctx.zero] * (n + 1)
    base = i1 * ctx.order - j1
    for l in range(n + 1):
        idx = base - l
        if 0 <= idx <= tp.m:
            a = tp.coeff(idx)
            if a != ctx.zero:
                b = binom_mod_p(n, l, p)
                if b:
                    v = ctx.mul(a, ctx.from_int(b))
                    if l % 2 == 1:
                        v = ctx.neg(v)
                    coeffs[n - l] = ctx.add(coeffs[n - l], v)
    return Poly(ctx, coeffs)


def _matrix_rows(tp: TwistedPower, k: int):
    return tuple(tuple(_entry_poly(tp, i, j) for j in range(1, k + 1))
                 for i in range(1, k + 1))


def build_matrix(tp: TwistedPower, k: int) -> MMatrix:
    """The k x k matrix; requires k >= k_min for the stable determinant."""
    if k < tp.k_min:
        raise ValueError(f"k = {k} below the stable threshold {tp.k_min}")
    return MMatrix(q=tp.ctx.order, n=tp.n, k=k, rows=_matrix_rows(tp, k))


def l_function(tp: TwistedPower) -> LFun:
    """det(I - M U) at the minimal stable size, division-free."""
    ctx = tp.ctx
    rows = _matrix_rows(tp, tp.k_min)
    vec = det_identity_minus_mu([list(r) for r in rows],
                                Poly.zero(ctx), Poly.one(ctx))
    return LFun(ctx, vec)


def analytic_rank(tp: TwistedPower) -> int:
    """Order of vanishing of the L-function at U = 1."""
    return lfun_order_at(l_function(tp), tp.ctx.one)


def infinity_factor(tp: TwistedPower, nfrak: int) -> LFun:
    """Reciprocal local factor at infinity for twisting degree ``nfrak``.

    Requires nfrak <= -(m+n)/(q-1).  Strictly below the boundary (in
    particular whenever (q-1) does not divide m+n) the factor is the unit 1;
    at the boundary it is 1 - (-1)^n a_m U (returned as the numerator of the
    reciprocal factor).
    """
    ctx = tp.ctx
    q = ctx.order
    s = tp.m + tp.n
    if nfrak * (q - 1) > -s:
        raise ValueError("twisting degree too large for a regular map")
    if nfrak * (q - 1) == -s:
        am = tp.P.lead()
        if tp.n % 2 == 1:
            am = ctx.neg(am)
        return LFun(ctx, [Poly.one(ctx), Poly.constant(ctx, ctx.neg(am))])
    return LFun.one(ctx)


def d_coefficients(l: LFun, k: int):
    """Taylor-style coefficients whose leading zero run equals the rank.

    Write L(U) = V^(-k) * sum_i C_i V^i with V = U^(-1) (so C_i is the
    U^(k-i) coefficient), then substitute V = W + 1 and expand:
    D_j = sum_{i>=j} C(i, j) C_i.  The analytic rank is >= r0 exactly when
    D_0 = ... = D_{r0-1} = 0.
    """
    if l.u_degree > k:
        raise ValueError("U-degree of L exceeds k")
    ctx = l.ctx
    p = ctx.char
    cs = [l.coeff(k - i) for i in range(k + 1)]
    out = []
    for j in range(k + 1):
        acc = Poly.zero(ctx)
        for i in range(j, k + 1):
            b = binom_mod_p(i, j, p)
            if b and not cs[i].is_zero():
                acc = acc + cs[i].scalar_mul(ctx.from_int(b))
        out.append(acc)
    return out
