"""Matrix differential operators over the exponential-rational field and
the coordinate solver that attaches one to each meromorphic function.

An operator is an N x N matrix whose entries are finite sums
``sum_alpha a_alpha(x) d^alpha`` with coefficients in K; composition uses
the exact Leibniz rule

    d^alpha (b * d^beta) =
        sum_{gamma <= alpha} C(alpha, gamma) (d^(alpha-gamma) b) d^(gamma+beta).

Given a free grade-1 basis psi_1..psi_N, the coordinates of any grade-k
element are found by one linear solve over K: the candidate combination

    sum_i sum_{|alpha| <= k-1} a_{i,alpha} * f^(k-1-|alpha|) * (d^alpha psi_i)

must reproduce the target numerator monomial by monomial.  Freeness makes
the solution unique; an inconsistent system means the target lies outside
the module, and a nontrivial kernel is a genericity failure of the basis.

The operator attached to a meromorphic function lam of pole order d has
row i equal to the coordinates of lam * psi_i, hence order at most d, and
satisfies the eigenvalue relation by construction.  Operator entries
depend on the chosen basis; two valid bases give conjugate operators with
generally different coefficients.
"""

from __future__ import annotations

from math import comb

from .bamodule import ModuleBasis, ModuleElement
from .biform import BiForm
from .errors import (ContextMismatch, NotInModule, OrderTooHigh,
                     SizeMismatch)
from .exprat import ExpContext, ExpRat
from .gaussq import GaussQ
from .mero import MeroFunc, require_admissible


def _derive_multi(e: ExpRat, alpha) -> ExpRat:
    for j, times in enumerate(alpha):
        for _ in range(times):
            e = e.derive(j)
    return e


def _binom(alpha, gamma) -> int:
    out = 1
    for a, g in zip(alpha, gamma):
        out *= comb(a, g)
    return out


def _sub_indices(alpha):
    """All gamma with 0 <= gamma <= alpha componentwise."""
    if not alpha:
        return [()]
    rest = _sub_indices(alpha[1:])
    return [(g,) + r for g in range(alpha[0] + 1) for r in rest]


class DiffOp:
    """N x N differential operator with exponential-rational coefficients."""

    __slots__ = ("ctx", "size", "entries")

    def __init__(self, ctx: ExpContext, size: int, entries):
        clean = {}
        for (i, j), terms in entries.items():
            if not (0 <= i < size and 0 <= j < size):
                raise SizeMismatch(f"entry ({i},{j}) outside a {size}x{size} matrix")
            cell = {}
            for alpha, c in terms.items():
                alpha = tuple(alpha)
                if len(alpha) != ctx.n:
                    raise SizeMismatch("derivative multi-index of wrong length")
                if isinstance(c, (GaussQ, int)):
                    c = ExpRat.const(ctx, c)
                if c.ctx != ctx:
                    raise ContextMismatch("coefficient over a different context")
                if not c.is_zero:
                    cell[alpha] = c
            if cell:
                clean[(i, j)] = cell
        self.ctx = ctx
        self.size = size
        self.entries = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx, size) -> "DiffOp":
        return cls(ctx, size, {})

    @classmethod
    def identity(cls, ctx, size) -> "DiffOp":
        zero_alpha = (0,) * ctx.n
        one = ExpRat.one(ctx)
        return cls(ctx, size,
                   {(i, i): {zero_alpha: one} for i in range(size)})

    @classmethod
    def from_rows(cls, ctx, rows) -> "DiffOp":
        """Rows as sequences of {alpha: coefficient} scalar operators."""
        entries = {}
        for i, row in enumerate(rows):
            for j, cell in enumerate(row):
                if cell:
                    entries[(i, j)] = dict(cell)
        return cls(ctx, len(rows), entries)

    # -- structure -----------------------------------------------------------

    def entry(self, i: int, j: int) -> dict:
        return dict(self.entries.get((i, j), {}))

    def row(self, i: int):
        return tuple(self.entry(i, j) for j in range(self.size))

    @property
    def order(self) -> int:
        mx = -1
        for cell in self.entries.values():
            for alpha in cell:
                mx = max(mx, sum(alpha))
        return mx

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, DiffOp) and self.ctx == other.ctx
                and self.size == other.size and self.entries == other.entries)

    # -- ring operations -----------------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, DiffOp):
            raise SizeMismatch("can only combine differential operators")
        if self.size != other.size:
            raise SizeMismatch("operators of different matrix size")
        if self.ctx != other.ctx:
            raise ContextMismatch("operators over different contexts")

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check_compatible(other)
        out = {k: dict(v) for k, v in self.entries.items()}
        for key, cell in other.entries.items():
            dst = out.setdefault(key, {})
            for alpha, c in cell.items():
                prev = dst.get(alpha)
                dst[alpha] = c if prev is None else prev + c
        return DiffOp(self.ctx, self.size, out)

    def __neg__(self):
        return DiffOp(self.ctx, self.size,
                      {k: {a: -c for a, c in cell.items()}
                       for k, cell in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "DiffOp":
        return DiffOp(self.ctx, self.size,
                      {k: {a: c * s for a, c in cell.items()}
                       for k, cell in self.entries.items()})

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Operator product: apply ``other`` first, then ``self``."""
        self._check_compatible(other)
        out = {}
        deriv_memo = {}

        def derived(l, j, beta, rest, cb):
            key = (l, j, beta, rest)
            hit = deriv_memo.get(key)
            if hit is None:
                hit = _derive_multi(cb, rest)
                deriv_memo[key] = hit
            return hit

        for (i, l), cell_a in self.entries.items():
            for j in range(self.size):
                cell_b = other.entries.get((l, j))
                if not cell_b:
                    continue
                dst = out.setdefault((i, j), {})
                for alpha, ca in cell_a.items():
                    for beta, cb in cell_b.items():
                        for gamma in _sub_indices(alpha):
                            rest = tuple(a - g for a, g in zip(alpha, gamma))
                            coeff = ca * derived(l, j, beta, rest, cb)
                            m = _binom(alpha, gamma)
                            if m != 1:
                                coeff = coeff * m
                            if coeff.is_zero:
                                continue
                            idx = tuple(g + b for g, b in zip(gamma, beta))
                            prev = dst.get(idx)
                            dst[idx] = coeff if prev is None else prev + coeff
        return DiffOp(self.ctx, self.size, out)

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return self.compose(other)
        return NotImplemented

    # -- presentation ----------------------------------------------------------

    def pretty(self, names=None) -> str:
        if names is None:
            names = _default_names(self.ctx.n)
        lines = []
        for i in range(self.size):
            for j in range(self.size):
                cell = self.entries.get((i, j))
                lines.append(f"D[{i + 1}][{j + 1}] = {_cell_text(cell, names)}")
        return "\n".join(lines)

    def to_json(self):
        entries = []
        for (i, j) in sorted(self.entries):
            cell = self.entries[(i, j)]
            for alpha in sorted(cell):
                entries.append({
                    "row": i,
                    "col": j,
                    "alpha": list(alpha),
                    "coeff": cell[alpha].to_json(),
                })
        return {
            "size": self.size,
            "context_c": [w.to_strings() for w in self.ctx.c],
            "entries": entries,
        }

    @classmethod
    def from_json(cls, obj) -> "DiffOp":
        ctx = ExpContext([GaussQ.from_strings(p) for p in obj["context_c"]])
        entries = {}
        for item in obj["entries"]:
            key = (item["row"], item["col"])
            cell = entries.setdefault(key, {})
            alpha = tuple(item["alpha"])
            coeff = ExpRat.from_json(ctx, item["coeff"])
            prev = cell.get(alpha)
            cell[alpha] = coeff if prev is None else prev + coeff
        return cls(ctx, obj["size"], entries)

    def __repr__(self):
        return f"DiffOp(size={self.size}, order={self.order})"


def _default_names(n: int):
    base = ("x", "y", "z")
    if n <= 3:
        return base[:n]
    return tuple(f"x{k + 1}" for k in range(n))


def _cell_text(cell, names) -> str:
    if not cell:
        return "0"
    parts = []
    for alpha in sorted(cell, key=lambda a: (sum(a), a)):
        c = cell[alpha]
        dpart = "".join(
            (f"∂{names[m]}" if e == 1 else f"∂{names[m]}^{e}")
            for m, e in enumerate(alpha) if e)
        cs = c.text()
        if not dpart:
            parts.append(cs)
        elif cs == "1":
            parts.append(dpart)
        else:
            parts.append(f"({cs})·{dpart}")
    return " + ".join(parts)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b) - b.compose(a)


# ---------------------------------------------------------------------------
# free coordinates
# ---------------------------------------------------------------------------

def apply_row(row, basis: ModuleBasis, k: int) -> ModuleElement:
    """Evaluate an operator row on the basis, landing in grade k.

    ``row`` is a sequence of ``{alpha: coefficient}`` scalar operators,
    one per basis element; every |alpha| must stay below k.
    """
    data = basis.data
    if len(row) != basis.size:
        raise SizeMismatch(
            f"row has {len(row)} cells for a basis of size {basis.size}")
    total = BiForm.zero(data.n, k, k)
    for i, cell in enumerate(row):
        for alpha, c in cell.items():
            if sum(alpha) > k - 1:
                raise OrderTooHigh(
                    f"order {sum(alpha)} row applied at grade {k}")
            num = basis.derived_numerator(i, alpha)
            lifted = num * basis.pole_power(k - 1 - sum(alpha))
            total = total + lifted.scale(c)
    return ModuleElement(data, k, total)


def expand(target: ModuleElement, basis: ModuleBasis):
    """Unique operator row with apply_row(row, basis, target.k) == target."""
    data = basis.data
    if target.data != data:
        raise SizeMismatch("target lives on different spectral data")
    k = target.k
    ctx = data.context()
    zero = ExpRat.zero(ctx)
    unknowns, cols, _solver, _free, _z = basis.expansion_system(k)
    rhs = [target.h.coeffs.get(key, zero) for key in cols]
    sol = basis.solve_coordinates(k, rhs)
    if sol is None:
        raise NotInModule(
            "target is not an operator combination of the basis")
    row = []
    for i in range(basis.size):
        cell = {}
        for u, (bi, alpha) in enumerate(unknowns):
            if bi == i and not sol[u].is_zero:
                cell[alpha] = sol[u]
        row.append(cell)
    return tuple(row)


def build_operator(lam: MeroFunc, basis: ModuleBasis) -> DiffOp:
    """The operator D with D(psi_i) = lam * psi_i for every basis element."""
    require_admissible(lam)
    data = basis.data
    rows = []
    for i in range(basis.size):
        target = basis.elements[i].mul_mero(lam)
        rows.append(expand(target, basis))
    return DiffOp.from_rows(data.context(), rows)


def eigen_relation_holds(op: DiffOp, basis: ModuleBasis, lam: MeroFunc) -> bool:
    """Exact check of op(Psi) = lam * Psi, element by element."""
    k = 1 + lam.d
    for i in range(basis.size):
        lhs = apply_row(op.row(i), basis, k)
        rhs = basis.elements[i].mul_mero(lam)
        if lhs != rhs:
            return False
    return True
