"""Singular extensions of an oriented dialgebra by itself.

A singular extension is a split short exact sequence 0 -> D -> B -> D -> 0
of G-modules in which B is again an oriented dialgebra, the included copy
of D multiplies to zero, and products with the kernel factor through the
projection.  Degree-1 cocycle pairs (α, β) classify these: β records the
product defect of a section, α the action defect.

B is realised on D ⊕ D with the kernel copy first:

    (a1, x1) ⊣ (a2, x2) = (a1 ⊣ x2 + x1 ⊣ a2 + βˡ(x1, x2),  x1 ⊣ x2)
    (a1, x1) ⊢ (a2, x2) = (a1 ⊢ x2 + x1 ⊢ a2 + βʳ(x1, x2),  x1 ⊢ x2)
    g (a, x) = (g a - α(g, g x),  g x)

Extraction reads the defects of a chosen section s with p∘s = id:

    α(g, x) = s(x) - g s(g⁻¹ x)
    βˡ(x1, x2) = s(x1) ⊣ s(x2) - s(x1 ⊣ x2)       (βʳ with ⊢)

With the canonical section x -> (0, x) extraction inverts the builder
exactly; two sections of the same extension extract cohomologous pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import (
    degree1_coboundary_matrix,
    degree1_pack,
    is_degree1_cocycle,
)
from .dialgebra import Dialgebra, zero_tensor
from .linalg import Matrix, in_image, normalize_scalar, rank
from .oriented import (
    CheckItem,
    CheckReport,
    OrientedDialgebra,
    check_oriented_dialgebra,
)


class NotCocycleError(ValueError):
    def __init__(self, residuals):
        self.residuals = residuals
        super().__init__(f"pair is not a degree-1 cocycle ({len(residuals)} nonzero residuals)")


class NotSectionError(ValueError):
    pass


class ExtensionInvalidError(ValueError):
    def __init__(self, report: CheckReport):
        self.report = report
        names = [item.name for item in report.failures()]
        super().__init__(f"extension clauses fail: {names}")


@dataclass
class SingularExtension:
    """The middle term with its inclusion and projection.

    ``total`` is the 2d-dimensional oriented dialgebra B, ``inclusion``
    the (2d x d) matrix of i and ``projection`` the (d x 2d) matrix of p.
    """

    total: OrientedDialgebra
    inclusion: Matrix
    projection: Matrix

    @property
    def base_dim(self) -> int:
        return self.projection.rows


def canonical_section(E: SingularExtension) -> Matrix:
    """The section x -> (0, x) of the built coordinates."""
    d = E.base_dim
    return Matrix(2 * d, d, [0] * (d * d) + [1 if i == j else 0 for i in range(d) for j in range(d)])


def build_extension(OD: OrientedDialgebra, alpha, beta) -> SingularExtension:
    """Assemble B = D ⊕ D from a degree-1 cocycle pair and re-verify it."""
    report = is_degree1_cocycle(OD, alpha, beta)
    if not report.ok:
        raise NotCocycleError(report.residuals)
    d = OD.dim
    beta_l, beta_r = beta
    left = zero_tensor(2 * d)
    right = zero_tensor(2 * d)
    for tensor, base_tensor, defect in ((left, OD.base.left, beta_l),
                                        (right, OD.base.right, beta_r)):
        for i in range(d):
            for j in range(d):
                prod = base_tensor[i][j]
                for k in range(d):
                    v = prod[k]
                    if v:
                        tensor[i][d + j][k] = v          # kernel ∘ base -> kernel
                        tensor[d + i][j][k] = v          # base ∘ kernel -> kernel
                        tensor[d + i][d + j][d + k] = v  # base ∘ base -> base
                for k in range(d):
                    v = defect[i][j][k]
                    if v:
                        tensor[d + i][d + j][k] = normalize_scalar(
                            tensor[d + i][d + j][k] + v
                        )
    B = Dialgebra(2 * d, left, right)
    action = []
    for g in OD.group.elements():
        rho = OD.action[g]
        twist = alpha[g].mul(rho)  # x -> α(g, g x)
        rows = []
        for r in range(d):
            rows.append([rho.at(r, c) for c in range(d)]
                        + [normalize_scalar(-twist.at(r, c)) for c in range(d)])
        for r in range(d):
            rows.append([0] * d + [rho.at(r, c) for c in range(d)])
        action.append(Matrix.from_rows(rows))
    total = OrientedDialgebra(B, OD.group, action)
    inclusion = Matrix(2 * d, d,
                       [1 if i == j else 0 for i in range(d) for j in range(d)] + [0] * (d * d))
    projection = Matrix(d, 2 * d,
                        [1 if j == d + i else 0 for i in range(d) for j in range(2 * d)])
    E = SingularExtension(total, inclusion, projection)
    report = check_extension(OD, E)
    if not report.ok:
        raise ExtensionInvalidError(report)
    return E


def check_extension(OD: OrientedDialgebra, E: SingularExtension) -> CheckReport:
    """Verify every clause of the singular-extension definition."""
    B = E.total
    inc, proj = E.inclusion, E.projection
    d = OD.dim
    items = []

    base_report = check_oriented_dialgebra(B)
    items.append(CheckItem("middle term is an oriented dialgebra", base_report.ok,
                           [it.name for it in base_report.failures()] or None))

    items.append(CheckItem("p . i = 0", proj.mul(inc).is_zero()))
    exact = rank(inc) == d and rank(proj) == d and B.dim == 2 * d
    items.append(CheckItem("sequence is exact (ranks d, d on dimension 2d)", exact))

    equivariant = True
    witness = None
    for g in OD.group.elements():
        if inc.mul(OD.action[g]) != B.action[g].mul(inc):
            equivariant, witness = False, ("i", g)
            break
        if OD.action[g].mul(proj) != proj.mul(B.action[g]):
            equivariant, witness = False, ("p", g)
            break
    items.append(CheckItem("i and p are G-equivariant", equivariant, witness))

    pmorph = True
    witness = None
    bbasis = B.base.basis()
    for bi, b1 in enumerate(bbasis):
        for bj, b2 in enumerate(bbasis):
            for name, bprod, dprod in (("left", B.base.lmul, OD.base.lmul),
                                       ("right", B.base.rmul, OD.base.rmul)):
                if proj.matvec(bprod(b1, b2)) != dprod(proj.matvec(b1), proj.matvec(b2)):
                    pmorph, witness = False, (name, bi, bj)
                    break
            if not pmorph:
                break
        if not pmorph:
            break
    items.append(CheckItem("p is a dialgebra morphism", pmorph, witness))

    dbasis = OD.base.basis()
    sq = True
    witness = None
    for i, x1 in enumerate(dbasis):
        ix1 = inc.matvec(x1)
        for j, x2 in enumerate(dbasis):
            ix2 = inc.matvec(x2)
            if any(B.base.lmul(ix1, ix2)) or any(B.base.rmul(ix1, ix2)):
                sq, witness = False, (i, j)
                break
        if not sq:
            break
    items.append(CheckItem("included copy multiplies to zero", sq, witness))

    factor = True
    witness = None
    for i, x in enumerate(dbasis):
        ix = inc.matvec(x)
        for bj, b in enumerate(bbasis):
            pb = proj.matvec(b)
            for name, bprod, dprod in (("left", B.base.lmul, OD.base.lmul),
                                       ("right", B.base.rmul, OD.base.rmul)):
                if bprod(ix, b) != inc.matvec(dprod(x, pb)):
                    factor, witness = False, (name, "i(x) . b", i, bj)
                    break
                if bprod(b, ix) != inc.matvec(dprod(pb, x)):
                    factor, witness = False, (name, "b . i(x)", i, bj)
                    break
            if not factor:
                break
        if not factor:
            break
    items.append(CheckItem("kernel products factor through p", factor, witness))
    return CheckReport(items)


def extract_cocycle(OD: OrientedDialgebra, E: SingularExtension, section: Matrix):
    """Defect pair (α, β) of a section; asserted to be a cocycle."""
    d = OD.dim
    B = E.total
    if section.shape() != (2 * d, d):
        raise NotSectionError(f"section must be {2 * d}x{d}")
    if E.projection.mul(section) != Matrix.identity(d):
        raise NotSectionError("p . s is not the identity")

    def kernel_coords(v):
        a = in_image(E.inclusion, v)
        if a is None:
            raise ExtensionInvalidError(CheckReport(
                [CheckItem("defect lands in the kernel", False, v)]))
        return a

    basis = OD.base.basis()
    alpha = []
    for g in OD.group.elements():
        ginv = OD.group.inv(g)
        cols = []
        for x in basis:
            v = section.matvec(x)
            w = B.action[g].matvec(section.matvec(OD.act(ginv, x)))
            cols.append(kernel_coords([normalize_scalar(a - b) for a, b in zip(v, w)]))
        alpha.append(Matrix.from_rows([[cols[i][k] for i in range(d)] for k in range(d)]))

    def defect(bprod, dprod):
        out = zero_tensor(d)
        for i, x1 in enumerate(basis):
            s1 = section.matvec(x1)
            for j, x2 in enumerate(basis):
                v = bprod(s1, section.matvec(x2))
                w = section.matvec(dprod(x1, x2))
                out[i][j] = kernel_coords([normalize_scalar(a - b) for a, b in zip(v, w)])
        return out

    beta_l = defect(B.base.lmul, OD.base.lmul)
    beta_r = defect(B.base.rmul, OD.base.rmul)
    report = is_degree1_cocycle(OD, alpha, (beta_l, beta_r))
    if not report.ok:
        raise NotCocycleError(report.residuals)
    return alpha, (beta_l, beta_r)


def cocycles_cohomologous(OD: OrientedDialgebra, pair1, pair2):
    """A γ whose coboundary is pair1 - pair2, or None if the classes differ.

    γ is returned as a d x d matrix; plugging it into the degree-0
    coboundary reproduces the difference exactly.
    """
    for pair in (pair1, pair2):
        report = is_degree1_cocycle(OD, pair[0], pair[1])
        if not report.ok:
            raise NotCocycleError(report.residuals)
    v1 = degree1_pack(OD, pair1[0], pair1[1])
    v2 = degree1_pack(OD, pair2[0], pair2[1])
    diff = [normalize_scalar(a - b) for a, b in zip(v1, v2)]
    u = in_image(degree1_coboundary_matrix(OD), diff)
    if u is None:
        return None
    d = OD.dim
    return Matrix.from_rows([[u[i * d + k] for i in range(d)] for k in range(d)])
