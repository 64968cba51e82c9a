"""
The unramified unitary group U(2,1) = {g in GL_3(E) : conj(g)^T J g = J} over
truncated arithmetic, with its standard elements, the level subgroups K_n, and
the double coset decomposition B \\ G / K_n.

Double cosets
-------------
B is the stabilizer of the isotropic line spanned by the bottom row, so
``B g K_n`` only depends on the K_n-orbit of the bottom row ``r = (r1, r2, r3)``
up to scalars.  Conjugating K_n by diag(1, p^a, p^n) (0 <= a <= n) lands in
GL_3(o_E), hence every ``min(v1, v2 + a, v3 + n)`` is K_n-invariant and

    m(g) = min(v1, v2 + n, v3 + n) - min(v1, v2, v3 + n)

is a double coset invariant.  It takes the value min(i, n - i) on
gamma_i = uhat(p^i, 0); since t_n lies in K_n the cosets of gamma_i and
gamma_{n-i} coincide and the canonical representatives are gamma_i with
ceil(n/2) <= i <= n (i = n being the identity coset).  ``classify_coset``
produces an explicit witness g = b * gamma_i * k by elimination, and that
witness is what the induced model consumes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .padic import Context, ExtElem, LocalElem, PrecisionError

__all__ = [
    "GroupElt",
    "InconsistencyError",
    "DomainError",
    "CosetWitness",
    "identity",
    "J",
    "u",
    "bold_u",
    "uhat",
    "bold_uhat",
    "t",
    "zeta",
    "gamma",
    "t_n",
    "diag",
    "central",
    "make_generator",
    "is_in_G",
    "is_in_subgroup",
    "borel_alpha",
    "borel_beta",
    "delta_half",
    "coset_invariant",
    "classify_coset",
    "reduce_bk",
    "iwasawa_k0",
    "verify_identity",
    "IDENTITIES",
]


class InconsistencyError(RuntimeError):
    """A decomposition failed to reconstruct its input (implementation bug)."""


class DomainError(ValueError):
    """Constructor parameters outside the required domain."""


def _ext(ctx: Context, x) -> ExtElem:
    if isinstance(x, ExtElem):
        return x
    if isinstance(x, LocalElem):
        return ExtElem(x, ctx.zero())
    if isinstance(x, tuple):
        return ctx.ext(*x)
    return ctx.ext(x, 0)


def _local(ctx: Context, y) -> LocalElem:
    if isinstance(y, LocalElem):
        return y
    if isinstance(y, ExtElem):
        if not y.b.is_zero():
            raise DomainError("expected an element of F")
        return y.a
    return ctx.F(y)


class GroupElt:
    """3x3 matrix over E, stored row-major as a tuple of tuples."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: Context, rows):
        self.ctx = ctx
        self.rows = tuple(tuple(_ext(ctx, x) for x in row) for row in rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "GroupElt") -> "GroupElt":
        A, B = self.rows, other.rows
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = None
                for k in range(3):
                    x, y = A[i][k], B[k][j]
                    if x.is_exact_zero or y.is_exact_zero:
                        continue
                    term = x * y
                    acc = term if acc is None else acc + term
                row.append(acc if acc is not None else self.ctx.ext(0, 0))
            out.append(row)
        return GroupElt(self.ctx, out)

    def conj_transpose(self) -> "GroupElt":
        return GroupElt(self.ctx, [[self.rows[j][i].conj() for j in range(3)] for i in range(3)])

    def transpose(self) -> "GroupElt":
        return GroupElt(self.ctx, [[self.rows[j][i] for j in range(3)] for i in range(3)])

    def inverse(self) -> "GroupElt":
        """J conj(g)^T J, valid for g in G."""
        m = self.conj_transpose().rows
        return GroupElt(self.ctx, [[m[2 - i][2 - j] for j in range(3)] for i in range(3)])

    def __pow__(self, k: int) -> "GroupElt":
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def equals(self, other: "GroupElt") -> bool:
        return all(self.rows[i][j].equals(other.rows[i][j]) for i in range(3) for j in range(3))

    def mismatches(self, other: "GroupElt") -> list[tuple[int, int]]:
        return [(i, j) for i in range(3) for j in range(3) if not self.rows[i][j].equals(other.rows[i][j])]

    def __eq__(self, other):
        if not isinstance(other, GroupElt):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def det(self) -> ExtElem:
        m = self.rows
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def bottom_row(self) -> tuple[ExtElem, ExtElem, ExtElem]:
        return self.rows[2]

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(3) for j in range(i))

    def __repr__(self):
        return "GroupElt(\n  " + "\n  ".join(repr(list(r)) for r in self.rows) + ")"


# -- standard elements --------------------------------------------------------


def identity(ctx: Context) -> GroupElt:
    return diag(ctx, 1, 1, 1)


def J(ctx: Context) -> GroupElt:
    z = 0
    return GroupElt(ctx, [[z, z, 1], [z, 1, z], [1, z, z]])


def u(ctx: Context, x, y) -> GroupElt:
    """Unipotent u(x, y), x in E, y in F."""
    x = _ext(ctx, x)
    y = _local(ctx, y)
    xbar = x.conj()
    corner = ExtElem(ctx.zero(), y) - x * xbar * Fraction(1, 2)
    return GroupElt(ctx, [[1, x, corner], [0, 1, -xbar], [0, 0, 1]])


def bold_u(ctx: Context, x, y) -> GroupElt:
    """Unipotent with free corner y, subject to y + conj(y) + x conj(x) = 0."""
    x, y = _ext(ctx, x), _ext(ctx, y)
    if not (y + y.conj() + x * x.conj()).is_zero():
        raise DomainError("bold_u requires y + conj(y) + x conj(x) = 0")
    return GroupElt(ctx, [[1, x, y], [0, 1, -x.conj()], [0, 0, 1]])


def uhat(ctx: Context, x, y) -> GroupElt:
    return u(ctx, x, y).transpose()


def bold_uhat(ctx: Context, x, y) -> GroupElt:
    return bold_u(ctx, x, y).transpose()


def t(ctx: Context, a) -> GroupElt:
    """Torus element diag(a, 1, conj(a)^-1)."""
    a = _ext(ctx, a)
    return GroupElt(ctx, [[a, 0, 0], [0, 1, 0], [0, 0, a.conj().inverse()]])


def zeta(ctx: Context, i: int = 1) -> GroupElt:
    """diag(p, 1, p^-1) ** i."""
    return GroupElt(ctx, [[ctx.pi_power(i), 0, 0], [0, 1, 0], [0, 0, ctx.pi_power(-i)]])


def gamma(ctx: Context, i: int) -> GroupElt:
    return uhat(ctx, ctx.pi_power(i), 0)


def t_n(ctx: Context, n: int) -> GroupElt:
    """Antidiagonal (p^-n, 1, p^n); lies in K_n for n >= 0."""
    z = 0
    return GroupElt(ctx, [[z, z, ctx.pi_power(-n)], [z, 1, z], [ctx.pi_power(n), z, z]])


def diag(ctx: Context, a, b, c) -> GroupElt:
    return GroupElt(ctx, [[a, 0, 0], [0, b, 0], [0, 0, c]])


def central(ctx: Context, z) -> GroupElt:
    z = _ext(ctx, z)
    if not (z * z.conj()).equals(1):
        raise DomainError("central elements have norm one")
    return diag(ctx, z, z, z)


def torus(ctx: Context, alpha, beta) -> GroupElt:
    """diag(alpha, beta, conj(alpha)^-1) with beta of norm one."""
    alpha, beta = _ext(ctx, alpha), _ext(ctx, beta)
    if not (beta * beta.conj()).equals(1):
        raise DomainError("middle torus entry must have norm one")
    return diag(ctx, alpha, beta, alpha.conj().inverse())


_GENERATORS = {
    "u": u,
    "bold_u": bold_u,
    "uhat": uhat,
    "bold_uhat": bold_uhat,
    "t": t,
    "zeta": zeta,
    "gamma": gamma,
    "t_n": t_n,
    "diag": torus,
    "center": central,
    "identity": identity,
}


def make_generator(ctx: Context, kind: str, *params) -> GroupElt:
    try:
        ctor = _GENERATORS[kind]
    except KeyError:
        raise DomainError(f"unknown generator {kind!r}") from None
    return ctor(ctx, *params)


# -- membership ---------------------------------------------------------------


def is_in_G(g: GroupElt) -> bool:
    lhs = g.conj_transpose() * J(g.ctx) * g
    if not lhs.equals(J(g.ctx)):
        return False
    return g.det().valuation() == 0


def _in_K(g: GroupElt, n: int) -> bool:
    bounds = ((0, 0, -n), (n, None, 0), (n, n, 0))
    for i in range(3):
        for j in range(3):
            if i == j == 1:
                continue
            if not g[i, j].val_at_least(bounds[i][j]):
                return False
    return (g[1, 1] - 1).val_at_least(max(n, 0)) if n > 0 else g[1, 1].val_at_least(0)


def is_in_subgroup(g: GroupElt, which: str, n: int = 0) -> bool:
    """Membership in G, B, U, K_n or Z_n (checked entrywise at working precision)."""
    if which == "G":
        return is_in_G(g)
    if which == "B":
        return g.is_upper_triangular()
    if which == "U":
        return g.is_upper_triangular() and all(g[i, i].equals(1) for i in range(3))
    if which == "K":
        return _in_K(g, n)
    if which == "Z":
        z = g[0, 0]
        scalar = all(g[i, j].is_zero() for i in range(3) for j in range(3) if i != j) and all(
            g[i, i].equals(z) for i in range(3)
        )
        if not scalar:
            return False
        return (z - 1).val_at_least(n) if n > 0 else True
    raise ValueError(f"unknown subgroup {which!r}")


# -- Borel data ---------------------------------------------------------------


def borel_alpha(b: GroupElt) -> ExtElem:
    return b[0, 0]


def borel_beta(b: GroupElt) -> ExtElem:
    return b[1, 1]


def delta_half(b: GroupElt) -> Fraction:
    """delta_B(b)^(1/2) = |alpha|_E."""
    return b[0, 0].abs_value()


# -- double cosets -------------------------------------------------------------


@dataclass(frozen=True)
class CosetWitness:
    """g = b * rep * k with b in B, k in K_n and rep = gamma_i (identity when i = n)."""

    rep_index: int
    n: int
    b: GroupElt
    k: GroupElt

    @property
    def is_identity_coset(self) -> bool:
        return self.rep_index == self.n

    def representative(self) -> GroupElt:
        ctx = self.b.ctx
        return identity(ctx) if self.rep_index == self.n else gamma(ctx, self.rep_index)


def _val(x: ExtElem):
    return x.valuation()


def coset_invariant(g: GroupElt, n: int) -> int:
    """min(i, n - i) for g in B gamma_i K_n, read off the bottom row valuations."""
    r1, r2, r3 = (_val(x) for x in g.bottom_row())
    inv = min(r1, r2 + n, r3 + n) - min(r1, r2, r3 + n)
    return int(inv)


def _twist_needed(r1: ExtElem, r3: ExtElem, n: int) -> bool:
    """True unless r3 != 0 and val(r1) >= val(r3) + n."""
    if r3.is_exact_zero:
        return True
    try:
        v3 = r3.valuation()
    except PrecisionError:
        v1 = r1.valuation()
        if v1 < r3.a.absprec + n and v1 < r3.b.absprec + n:
            return True
        raise
    return not r1.val_at_least(v3 + n)


def classify_coset(g: GroupElt, n: int) -> CosetWitness:
    """Decompose g = b * gamma_i * k with k in K_n and ceil(n/2) <= i <= n.

    Elimination uses only t_n, torus units t(a) and uhat(y, z) with y in p_E^n,
    z in p_F^n, all of which lie in K_n.  The result is checked by
    reconstruction.
    """
    ctx = g.ctx
    if n < 0:
        raise ValueError("level must be non-negative")
    e = identity(ctx)
    r1, r2, r3 = g.bottom_row()
    k_acc = e
    work = g
    if _twist_needed(r1, r3, n):
        k_acc = t_n(ctx, n)
        work = g * k_acc
        r1, r2, r3 = work.bottom_row()
        if _twist_needed(r1, r3, n):
            raise InconsistencyError("bottom row is not isotropic")
    rho2 = r2 / r3
    if rho2.val_at_least(n):
        y = rho2.conj()
        s = r1 / r3 + rho2 * y * Fraction(1, 2)
        z = -s.b
        if not (s.a.is_zero() and z.val_at_least(n)):
            raise InconsistencyError("failed to clear the bottom row")
        step = uhat(ctx, y, z)
        b = work * step
        index = n
        rep = e
    else:
        j = rho2.valuation()
        if 2 * j < n:
            raise InconsistencyError("bottom row is not isotropic")
        a = (ExtElem(ctx.pi_power(j), ctx.zero()) * -1 / rho2).conj()
        step = t(ctx, a)
        moved = work * step
        s1, s2, s3 = moved.bottom_row()
        s = s1 / s3
        z = -s.b
        if not z.val_at_least(n):
            raise InconsistencyError("failed to normalize the bottom row")
        fix = uhat(ctx, 0, z)
        step = step * fix
        rep = gamma(ctx, j)
        b = moved * fix * rep.inverse()
        index = j
    k = step.inverse() * k_acc.inverse()
    witness = CosetWitness(index, n, b, k)
    _check_witness(g, witness, rep)
    return witness


def _check_witness(g: GroupElt, w: CosetWitness, rep: GroupElt) -> None:
    if not w.b.is_upper_triangular():
        raise InconsistencyError("Borel part is not upper triangular")
    if not is_in_subgroup(w.k, "K", w.n):
        raise InconsistencyError("compact part is not in K_n")
    rebuilt = w.b * rep * w.k
    bad = rebuilt.mismatches(g)
    if bad:
        raise InconsistencyError(f"reconstruction mismatch at entries {bad}")


def reduce_bk(g: GroupElt, n: int):
    """(b, k) with g = b k, k in K_n, or None when g is outside B K_n."""
    w = classify_coset(g, n)
    if not w.is_identity_coset:
        return None
    return w.b, w.k


def iwasawa_k0(g: GroupElt):
    """G = B K_0: always succeeds."""
    b, k = reduce_bk(g, 0)
    return b, k


# -- random elements (used by property tests and verification suites) ---------


def random_unit(ctx: Context, rng: random.Random, digits: int = 6) -> ExtElem:
    p = ctx.p
    while True:
        a, b = rng.randrange(p**digits), rng.randrange(p**digits)
        if a % p or b % p:
            return ctx.ext(a, b)


def random_integer(ctx: Context, rng: random.Random, digits: int = 6, field: str = "E"):
    p = ctx.p
    a = rng.randrange(p**digits)
    if field == "F":
        return ctx.F(a)
    return ctx.ext(a, rng.randrange(p**digits))


def random_norm_one(ctx: Context, rng: random.Random, level: int = 0) -> ExtElem:
    """Element of E^1 (in 1 + p_E^level when level >= 1)."""
    if level <= 0:
        x = random_unit(ctx, rng)
        return x / x.conj()
    tt = random_integer(ctx, rng, field="F").shift(level)
    x = ExtElem(ctx.one(), tt)
    return x / x.conj()


def random_borel(ctx: Context, rng: random.Random, vrange: int = 3) -> GroupElt:
    alpha = random_unit(ctx, rng).shift(rng.randint(-vrange, vrange))
    beta = random_norm_one(ctx, rng)
    x = random_integer(ctx, rng).shift(rng.randint(-vrange, vrange))
    y = random_integer(ctx, rng, field="F").shift(rng.randint(-vrange, vrange))
    return torus(ctx, alpha, beta) * u(ctx, x, y)


def random_k(ctx: Context, rng: random.Random, n: int, length: int = 6) -> GroupElt:
    """A random word in generators of K_n."""
    g = identity(ctx)
    for _ in range(length):
        kind = rng.randrange(5)
        if kind == 0:
            h = uhat(ctx, random_integer(ctx, rng).shift(n), random_integer(ctx, rng, field="F").shift(n))
        elif kind == 1:
            h = u(ctx, random_integer(ctx, rng), random_integer(ctx, rng, field="F").shift(-n))
        elif kind == 2:
            h = t(ctx, random_unit(ctx, rng))
        elif kind == 3:
            h = torus(ctx, 1, random_norm_one(ctx, rng, level=n) if n > 0 else random_norm_one(ctx, rng))
        else:
            h = t_n(ctx, n)
        g = g * h
    return g


# -- proof identities ----------------------------------------------------------


def _check(lhs: GroupElt, rhs: GroupElt, name: str) -> bool:
    bad = lhs.mismatches(rhs)
    if bad:
        raise AssertionError(f"{name}: entries {bad} differ")
    return True


def _identity_I1(ctx, N, y, z):
    # x = z sqrt(eps) - y ybar / 2 with val z = N
    y = _ext(ctx, y)
    x = ExtElem(ctx.zero(), _local(ctx, z)) - y * y.conj() * Fraction(1, 2)
    if x.valuation() != N or not y.val_at_least(N):
        raise DomainError("I1 needs val(y) >= N and val(x) = N")
    xb = x.conj()
    lhs = bold_uhat(ctx, y, x)
    pN = ExtElem(ctx.pi_power(N + 1), ctx.zero())
    pmN = ExtElem(ctx.pi_power(-1 - N), ctx.zero())
    middle = diag(ctx, pN / xb, -xb / x, pmN * x)
    trailing = t_n(ctx, N + 1) * bold_u(ctx, -y.conj() / x, x.inverse())
    rhs = bold_u(ctx, -y.conj() / xb, x.inverse()) * middle * trailing
    _check(lhs, rhs, "I1")
    if not is_in_subgroup(trailing, "K", N + 1):
        raise AssertionError("I1: trailing factor not in K_{N+1}")
    return True


def _identity_I2(ctx, i, a, b):
    lhs = zeta(ctx, i) * u(ctx, a, b)
    a, b = _ext(ctx, a), _local(ctx, b)
    rhs = u(ctx, a.shift(i), b.shift(2 * i)) * zeta(ctx, i)
    return _check(lhs, rhs, "I2")


def _identity_I3(ctx, i, y):
    y = _ext(ctx, y)
    lhs = zeta(ctx, i + 1) * u(ctx, y, 0)
    rhs = u(ctx, y.shift(i + 1), 0) * zeta(ctx, i + 1)
    return _check(lhs, rhs, "I3")


def _gamma_prime(ctx):
    return t_n(ctx, 2) * gamma(ctx, 1) * t_n(ctx, 2)


def _identity_I4(ctx):
    return _check(_gamma_prime(ctx), u(ctx, -ctx.pi_power(-1), 0), "I4")


def _identity_I5(ctx):
    z = zeta(ctx)
    _check(z * _gamma_prime(ctx) * z.inverse(), u(ctx, -1, 0), "I5a")
    return _check(t_n(ctx, 1) * z.inverse(), z * t_n(ctx, 1), "I5b")


def _identity_I6(ctx, x):
    x = _local(ctx, x)
    lhs = t_n(ctx, 1) * _gamma_prime(ctx) * u(ctx, 0, x)
    rhs = uhat(ctx, 1, x.shift(2)) * t_n(ctx, 1)
    return _check(lhs, rhs, "I6")


def _identity_I7(ctx, N, y, z):
    y = _ext(ctx, y)
    x = ExtElem(ctx.zero(), _local(ctx, z)) - y * y.conj() * Fraction(1, 2)
    if not (x + x.conj() + y * y.conj()).is_zero():
        raise DomainError("I7 needs x + conj(x) + y conj(y) = 0")
    if x.valuation() != N or not y.val_at_least(N):
        raise DomainError("I7 needs val(y) >= N and val(x) = N")
    ratio = -x.conj() / x
    if not (ratio - 1).val_at_least(N):
        raise AssertionError("I7: -conj(x)/x not in 1 + p_E^N")
    return True


IDENTITIES = {
    "I1": _identity_I1,
    "I2": _identity_I2,
    "I3": _identity_I3,
    "I4": _identity_I4,
    "I5": _identity_I5,
    "I6": _identity_I6,
    "I7": _identity_I7,
}


def verify_identity(ctx: Context, name: str, *params) -> bool:
    """Evaluate both sides of a catalogued identity; raises AssertionError naming the bad entries."""
    return IDENTITIES[name](ctx, *params)


def sample_identity_params(ctx: Context, name: str, rng: random.Random, N: int = 1) -> tuple:
    """Random admissible parameters for ``verify_identity``."""
    p = ctx.p
    if name in ("I1", "I7"):
        y = random_integer(ctx, rng).shift(N)
        z = ctx.F(rng.randrange(1, p) + p * rng.randrange(p**4)).shift(N)
        return (N, y, z)
    if name == "I2":
        return (rng.randint(-3, 3), random_integer(ctx, rng).shift(rng.randint(-2, 2)), random_integer(ctx, rng, field="F").shift(rng.randint(-2, 2)))
    if name == "I3":
        return (rng.randint(-3, 3), random_integer(ctx, rng).shift(rng.randint(-2, 2)))
    if name == "I6":
        return (random_integer(ctx, rng, field="F").shift(-2),)
    return ()
