"""L-functions as polynomials in U with coefficients in GF(q)[T].

``LFun`` holds the U-coefficient list (each a ``Poly`` in T over the base
field) with constant term 1 — every L-function here satisfies L(0) = 1.

The vanishing order at U = γ is computed by repeated exact synthetic division
by (U - γ) over GF(q)[T]; formal derivatives are useless for this in
characteristic p, exact division is not.

JSON form: ``[{"u_deg": j, "coeffs_T": [...]}, ...]`` with little-endian
integer coefficient lists (zero polynomial encodes as ``[0]``).
"""

from __future__ import annotations

from .poly import Poly

__all__ = ["LFun", "lfun_order_at", "lfun_substitute"]


class LFun:
    """Sum over j of C'_j(T) U^j with C'_0 = 1."""

    __slots__ = ("ctx", "cs")

    def __init__(self, ctx, u_coeffs, check: bool = True):
        cs = list(u_coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        if check:
            if not cs or cs[0] != Poly.one(ctx):
                raise ValueError("L-function must have constant term 1")
        self.ctx = ctx
        self.cs = tuple(cs)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, [Poly.one(ctx)])

    @property
    def u_degree(self) -> int:
        return len(self.cs) - 1

    def coeff(self, j: int) -> Poly:
        return self.cs[j] if 0 <= j < len(self.cs) else Poly.zero(self.ctx)

    def __eq__(self, other):
        return (isinstance(other, LFun) and other.ctx == self.ctx
                and other.cs == self.cs)

    def __hash__(self):
        return hash((self.ctx, self.cs))

    def mul(self, other: "LFun", trunc: int | None = None) -> "LFun":
        """Product, optionally truncated at U-degree ``trunc``."""
        ctx = self.ctx
        n = len(self.cs) + len(other.cs) - 1
        if trunc is not None:
            n = min(n, trunc + 1)
        out = [Poly.zero(ctx) for _ in range(n)]
        for i, a in enumerate(self.cs):
            if a.is_zero() or i >= n:
                continue
            jmax = min(len(other.cs), n - i)
            for j in range(jmax):
                b = other.cs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return LFun(ctx, out)

    def truncate(self, d: int) -> "LFun":
        return LFun(self.ctx, self.cs[: d + 1])

    def eval_at_u(self, gamma) -> Poly:
        """L(T, γ) for a base-field scalar γ, as an element of GF(q)[T]."""
        acc = Poly.zero(self.ctx)
        for c in reversed(self.cs):
            acc = acc.scalar_mul(gamma) + c
        return acc

    def scale_u(self, gamma) -> "LFun":
        """U -> γU."""
        ctx = self.ctx
        out = []
        g = ctx.one
        for c in self.cs:
            out.append(c.scalar_mul(g))
            g = ctx.mul(g, gamma)
        return LFun(ctx, out)

    def subst_t_shift(self, d) -> "LFun":
        """T -> T - d."""
        ctx = self.ctx
        inner = Poly(ctx, (ctx.neg(d), ctx.one))
        return LFun(ctx, [c.compose(inner) for c in self.cs])

    def subst_t_scale_arg(self, s) -> "LFun":
        """T -> s*T (direct argument scaling)."""
        ctx = self.ctx
        out = []
        for c in self.cs:
            pw = ctx.one
            coeffs = []
            for v in c.coeffs:
                coeffs.append(ctx.mul(v, pw))
                pw = ctx.mul(pw, s)
            out.append(Poly(ctx, coeffs))
        return LFun(ctx, out)

    def subst_t_power(self, k: int) -> "LFun":
        """T -> T^(q^k)."""
        ctx = self.ctx
        stride = ctx.order**k
        out = []
        for c in self.cs:
            coeffs = [ctx.zero] * (stride * max(0, len(c.coeffs) - 1) + 1)
            for i, v in enumerate(c.coeffs):
                coeffs[i * stride] = v
            out.append(Poly(ctx, coeffs))
        return LFun(ctx, out)

    def subst_t_invert(self, n: int) -> "LFun":
        """T -> T^(-1) with the per-degree clearing factor (-T)^n.

        The U^j coefficient becomes (-1)^(nj) T^(nj) C'_j(T^(-1)); this is a
        polynomial exactly when deg_T C'_j <= n*j, which is checked.
        """
        ctx = self.ctx
        out = []
        for j, c in enumerate(self.cs):
            bound = n * j
            if c.degree > bound:
                raise ValueError("T-degree bound deg C'_j <= n*j fails; "
                                 "inversion is not polynomial")
            r = c.reversed_to(bound)
            if bound % 2 == 1:
                r = -r  # (-1)^(nj); a no-op in characteristic 2
            out.append(r)
        return LFun(ctx, out)

    def to_json_obj(self):
        return [{"u_deg": j, "coeffs_T": [int(v) for v in c.coeffs] or [0]}
                for j, c in enumerate(self.cs)]

    @classmethod
    def from_json_obj(cls, ctx, obj) -> "LFun":
        deg = max((int(e["u_deg"]) for e in obj), default=0)
        cs = [Poly.zero(ctx)] * (deg + 1)
        for e in obj:
            cs[int(e["u_deg"])] = Poly(ctx, [v % ctx.order if isinstance(v, int) else v
                                             for v in e["coeffs_T"]])
        return cls(ctx, cs)

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.cs):
            if not c.is_zero():
                terms.append(f"({'+'.join(str(v) + ('T^' + str(i) if i else '') for i, v in enumerate(c.coeffs) if v != self.ctx.zero)})U^{j}")
        return "LFun<" + (" + ".join(terms) or "0") + ">"


def lfun_order_at(l: LFun, gamma) -> int:
    """Largest r with (U - γ)^r dividing L, by repeated synthetic division.

    γ must be a nonzero base-field element; the order at U = 0 is always 0
    because L(0) = 1, so γ = 0 is rejected to avoid misuse.
    """
    ctx = l.ctx
    if gamma == ctx.zero:
        raise ValueError("order at U = 0 is always 0 (L(0) = 1); use nonzero γ")
    c = list(l.cs)
    order = 0
    while True:
        d = len(c) - 1
        if d < 0:
            raise AssertionError("L-function vanished identically")
        # synthetic division of sum c_j U^j by (U - γ)
        b = [Poly.zero(ctx)] * d
        carry = Poly.zero(ctx)
        for j in range(d, 0, -1):
            carry = c[j] + carry.scalar_mul(gamma)
            b[j - 1] = carry
        rem = c[0] + carry.scalar_mul(gamma)
        if not rem.is_zero():
            return order
        order += 1
        c = b


def lfun_substitute(l: LFun, t_map=None, u_scale=None) -> LFun:
    """Apply a T-substitution descriptor and/or a U-scaling.

    ``t_map`` is one of ``("shift", d)`` for T -> T-d, ``("scale", c)`` for
    T -> c^(-1) T, ``("power", k)`` for T -> T^(q^k), or ``("invert", n)``
    for the degree-bounded inversion with clearing factor (-T)^n.
    ``u_scale`` is a nonzero base-field element γ for U -> γU.
    """
    out = l
    if t_map is not None:
        kind, arg = t_map
        if kind == "shift":
            out = out.subst_t_shift(arg)
        elif kind == "scale":
            out = out.subst_t_scale_arg(out.ctx.inv(arg))
        elif kind == "power":
            out = out.subst_t_power(arg)
        elif kind == "invert":
            out = out.subst_t_invert(arg)
        else:
            raise ValueError(f"unknown T-substitution {kind!r}")
    if u_scale is not None:
        if u_scale == l.ctx.zero:
            raise ValueError("U-scaling must be nonzero")
        out = out.scale_u(u_scale)
    return out
