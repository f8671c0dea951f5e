"""Based quantum torus over an integral skew-symmetric form.

Elements are finitely supported sums  sum_a c_a M^a  with c_a in
Z[q^{1/2}, q^{-1/2}] and a in Z^n, multiplied by the rule

    M^a * M^b = q^(Pi(a,b)/2) M^(a+b).

Exact left division implements the computational side of the quantum
Laurent phenomenon: a cluster variable expressed in another cluster's
torus is found by dividing, and a division failure is always surfaced.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .qlaurent import NotDivisible, QLaurent

Vector = tuple[int, ...]

# iteration cap for left_divide: support(c) + 64 * support(a)
DIVISION_CAP_FACTOR = 64


@dataclass(frozen=True)
class SkewForm:
    """An integral skew-symmetric n x n matrix."""

    pi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.pi)
        for i, row in enumerate(self.pi):
            if len(row) != n:
                raise ValueError("form matrix must be square")
            for j in range(n):
                if self.pi[i][j] != -self.pi[j][i]:
                    raise ValueError("form matrix must be skew-symmetric")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> SkewForm:
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.pi)

    def pairing(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        """Pi(alpha, beta) = sum_ij alpha_i pi_ij beta_j."""
        total = 0
        for i, a in enumerate(alpha):
            if a:
                row = self.pi[i]
                total += a * sum(row[j] * b for j, b in enumerate(beta) if b)
        return total

    def to_json(self):
        return [list(r) for r in self.pi]


def _check_same_form(a: TorusElement, b: TorusElement):
    if a.form != b.form:
        raise ValueError("elements live over different skew forms")


class TorusElement:
    """Finitely supported map from the rank-n lattice to QLaurent."""

    __slots__ = ("form", "_support")

    def __init__(self, form: SkewForm, support: Mapping[Vector, QLaurent] | None = None):
        self.form = form
        clean: dict[Vector, QLaurent] = {}
        if support:
            for alpha, coeff in support.items():
                if len(alpha) != form.n:
                    raise ValueError("exponent vector has wrong length")
                if not coeff.is_zero():
                    clean[tuple(int(x) for x in alpha)] = coeff
        self._support = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, form: SkewForm) -> TorusElement:
        return cls(form)

    @classmethod
    def one(cls, form: SkewForm) -> TorusElement:
        return monomial(form, (0,) * form.n)

    # -- inspection ----------------------------------------------------

    @property
    def support(self) -> dict[Vector, QLaurent]:
        return dict(self._support)

    def is_zero(self) -> bool:
        return not self._support

    def is_monomial(self) -> bool:
        return len(self._support) == 1

    def monomial_data(self) -> tuple[Vector, QLaurent]:
        if not self.is_monomial():
            raise ValueError("not a single-term element")
        (alpha, coeff), = self._support.items()
        return alpha, coeff

    def coeff(self, alpha: Sequence[int]) -> QLaurent:
        return self._support.get(tuple(alpha), QLaurent.zero())

    def leading(self) -> tuple[Vector, QLaurent]:
        """Largest exponent vector in lexicographic order."""
        alpha = max(self._support)
        return alpha, self._support[alpha]

    def __bool__(self) -> bool:
        return bool(self._support)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: TorusElement) -> TorusElement:
        _check_same_form(self, other)
        out = dict(self._support)
        for alpha, c in other._support.items():
            out[alpha] = out.get(alpha, QLaurent.zero()) + c
        return TorusElement(self.form, out)

    def __neg__(self) -> TorusElement:
        return TorusElement(self.form, {a: -c for a, c in self._support.items()})

    def __sub__(self, other: TorusElement) -> TorusElement:
        return self + (-other)

    def scale(self, c: QLaurent) -> TorusElement:
        return TorusElement(self.form, {a: x * c for a, x in self._support.items()})

    def __mul__(self, other: TorusElement) -> TorusElement:
        if not isinstance(other, TorusElement):
            return NotImplemented
        _check_same_form(self, other)
        form = self.form
        pi = form.pi
        n = form.n
        out: dict[Vector, dict[int, int]] = {}
        for a, ca in self._support.items():
            # row vector alpha^T Pi, so the twist per b is a dot product
            row = [sum(a[i] * pi[i][j] for i in range(n) if a[i]) for j in range(n)]
            ta = ca._terms
            for b, cb in other._support.items():
                p = sum(r * x for r, x in zip(row, b) if x)
                gamma = tuple(x + y for x, y in zip(a, b))
                dst = out.setdefault(gamma, {})
                for e1, c1 in ta.items():
                    for e2, c2 in cb._terms.items():
                        e = e1 + e2 + p
                        dst[e] = dst.get(e, 0) + c1 * c2
        return TorusElement(form, {g: QLaurent(d) for g, d in out.items()})

    def __pow__(self, n: int) -> TorusElement:
        if n < 0:
            alpha, coeff = self.monomial_data()
            inv = monomial(self.form, tuple(-x for x in alpha),
                           coeff.inverse() * QLaurent.q_power(self.form.pairing(alpha, alpha)))
            # pairing(a,a) = 0, so the twist above is trivial; kept for clarity
            return inv ** (-n)
        out = TorusElement.one(self.form)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> TorusElement:
        """Coefficientwise bar-involution; basis monomials are fixed."""
        return TorusElement(self.form, {a: c.bar() for a, c in self._support.items()})

    # -- comparison / serialization ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.form == other.form and self._support == other._support

    def __hash__(self) -> int:
        return hash((self.form, tuple(sorted(self._support.items(), key=lambda kv: kv[0]))))

    def to_json(self):
        return [{"alpha": list(a), "coeff": c.to_json()}
                for a, c in sorted(self._support.items())]

    @classmethod
    def from_json(cls, form: SkewForm, data) -> TorusElement:
        return cls(form, {tuple(t["alpha"]): QLaurent.from_json(t["coeff"]) for t in data})

    def __repr__(self) -> str:
        return f"TorusElement({self._support!r})"

    def __str__(self) -> str:
        if not self._support:
            return "0"
        parts = []
        for a, c in sorted(self._support.items()):
            parts.append(f"({c})*M{list(a)}")
        return " + ".join(parts)


def monomial(form: SkewForm, alpha: Sequence[int], coeff: QLaurent | int = 1) -> TorusElement:
    """Single-term element coeff * M^alpha."""
    if len(alpha) != form.n:
        raise ValueError("exponent vector has wrong length")
    if isinstance(coeff, int):
        coeff = QLaurent.from_int(coeff)
    return TorusElement(form, {tuple(int(x) for x in alpha): coeff})


def element_to_json(x: TorusElement):
    return {"pi": x.form.to_json(), "terms": x.to_json()}


def weyl(form: SkewForm, exponents: Sequence[int],
         frame: Sequence[TorusElement] | None = None,
         frame_form: SkewForm | None = None) -> TorusElement:
    """Weyl-ordered product [prod_i A_i^(x_i)].

    Defined as q^((1/2) sum_{l<k} x_k x_l pi_kl) A_1^(x_1) ... A_N^(x_N),
    where pi is the commutation form of the frame (``frame_form``; the
    ambient ``form`` when the frame is the basis).  The result does not
    depend on the chosen ordering of the factors.  With the basis frame
    the product collapses to M^(sum x_i e_i).
    """
    x = [int(v) for v in exponents]
    comm = frame_form if frame_form is not None else form
    if len(x) != comm.n:
        raise ValueError("exponent vector has wrong length")
    if frame is None:
        # basis frame: the normalization makes this exactly M^x
        return monomial(form, tuple(x))
    twist = 0
    for k in range(len(x)):
        for l in range(k):
            twist += x[k] * x[l] * comm.pi[k][l]
    out = monomial(form, (0,) * form.n, QLaurent.q_power(twist))
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        if xi < 0 and not frame[i].is_monomial():
            raise NotDivisible(f"negative power of the multi-term frame entry {i}")
        out = out * frame[i] ** xi
    return out


def left_divide(a: TorusElement, c: TorusElement) -> TorusElement:
    """Solve a * x = c exactly; raise NotDivisible if no solution exists.

    Lexicographic leading terms are multiplicative, so the quotient is
    peeled off term by term against an in-place remainder.  Every returned
    value is re-checked by multiplication, so a wrong answer can never
    escape silently.
    """
    if a.is_zero():
        raise ZeroDivisionError("left division by zero")
    _check_same_form(a, c)
    form = a.form
    pi = form.pi
    n = form.n
    la, ca = a.leading()
    arows = {}
    for av in a._support:
        arows[av] = [sum(av[i] * pi[i][j] for i in range(n) if av[i])
                     for j in range(n)]
    rem: dict[Vector, dict[int, int]] = {v: dict(q._terms)
                                         for v, q in c._support.items()}
    quot: dict[Vector, QLaurent] = {}
    cap = len(c._support) + DIVISION_CAP_FACTOR * len(a._support)
    steps = 0
    while rem:
        steps += 1
        if steps > cap:
            raise NotDivisible("left division exceeded its iteration cap")
        lc = max(rem)
        gamma = tuple(x - y for x, y in zip(lc, la))
        twist = sum(r * x for r, x in zip(arows[la], gamma) if x)
        coeff = QLaurent(rem[lc]).exact_div(
            ca * QLaurent.q_power(twist))       # may raise NotDivisible
        quot[gamma] = coeff
        cterms = coeff._terms
        for av, acoeff in a._support.items():
            p = sum(r * x for r, x in zip(arows[av], gamma) if x)
            target = tuple(x + y for x, y in zip(av, gamma))
            dst = rem.setdefault(target, {})
            for e1, c1 in acoeff._terms.items():
                for e2, c2 in cterms.items():
                    e = e1 + e2 + p
                    v = dst.get(e, 0) - c1 * c2
                    if v:
                        dst[e] = v
                    elif e in dst:
                        del dst[e]
            if not dst:
                del rem[target]
        if rem and max(rem) >= lc:
            raise NotDivisible("left division does not reduce")
    result = TorusElement(form, quot)
    if a * result != c:
        raise NotDivisible("re-multiplication check failed")
    return result


def bar_element(x: TorusElement) -> TorusElement:
    return x.bar()
