"""Finite oriented groups and their actions on dialgebras.

An oriented group is a finite group G together with a sign homomorphism
ε: G -> {±1}.  Groups are handled purely by multiplication table, with the
identity fixed at index 0.  An oriented dialgebra is a dialgebra carrying
a G-module structure (one invertible matrix per element) whose
compatibility with the products is twisted by ε: elements of sign +1 act
by product-preserving maps, elements of sign -1 reverse the arguments of
both products:

    g(x ⊣ y) = gx ⊣ gy          if ε(g) = +1
    g(x ⊣ y) = gy ⊣ gx          if ε(g) = -1

and the same for ⊢.  With ε identically +1 this is the plain equivariant
condition.
"""

from __future__ import annotations

from itertools import permutations

from .dialgebra import Dialgebra
from .linalg import Matrix, rank


class CheckItem:
    __slots__ = ("name", "ok", "witness")

    def __init__(self, name, ok, witness=None):
        self.name = name
        self.ok = ok
        self.witness = witness

    def __repr__(self):
        return f"CheckItem({self.name}: {'ok' if self.ok else f'FAIL at {self.witness}'})"


class CheckReport:
    __slots__ = ("items",)

    def __init__(self, items):
        self.items = items

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self):
        return [item for item in self.items if not item.ok]


class OrientedGroup:
    """A finite group by multiplication table plus a sign character.

    ``table[a][b]`` is the index of the product ab; index 0 is the
    identity.  ``epsilon`` lists the sign of each element.
    """

    __slots__ = ("order", "table", "epsilon", "inverse")

    def __init__(self, table, epsilon):
        self.order = len(table)
        self.table = [list(row) for row in table]
        self.epsilon = list(epsilon)
        if len(self.epsilon) != self.order:
            raise ValueError("epsilon must assign a sign to every element")
        self.inverse = [-1] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    self.inverse[a] = b
                    break

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def sign(self, a: int) -> int:
        return self.epsilon[a]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):
        return f"OrientedGroup(order={self.order})"


def trivial_group() -> OrientedGroup:
    return OrientedGroup([[0]], [1])


def sign_group() -> OrientedGroup:
    """The two-element group {+1, -1} with ε the identity character."""
    return OrientedGroup([[0, 1], [1, 0]], [1, -1])


def cyclic_group(n: int, epsilon=None) -> OrientedGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    if epsilon is None:
        epsilon = [1] * n
    return OrientedGroup(table, epsilon)


def symmetric_group(n: int) -> OrientedGroup:
    """S_n with ε the sign of the permutation; identity first."""
    elems = sorted(permutations(range(n)))  # identity is lexicographically first
    index = {p: i for i, p in enumerate(elems)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in elems]
        for p in elems
    ]
    eps = [_perm_sign(p) for p in elems]
    return OrientedGroup(table, eps)


def _perm_sign(p) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def check_oriented_group(G: OrientedGroup) -> CheckReport:
    """Group axioms plus the homomorphism property of ε, with witnesses."""
    n = G.order
    items = []

    closure = CheckItem("table entries are element indices", True)
    for a in range(n):
        for b in range(n):
            if not 0 <= G.table[a][b] < n:
                closure = CheckItem(closure.name, False, (a, b))
    items.append(closure)
    if not closure.ok:
        return CheckReport(items)

    ident = CheckItem("index 0 is a two-sided identity", True)
    for a in range(n):
        if G.table[0][a] != a or G.table[a][0] != a:
            ident = CheckItem(ident.name, False, a)
            break
    items.append(ident)

    assoc = CheckItem("multiplication is associative", True)
    for a in range(n):
        for b in range(n):
            ab = G.table[a][b]
            for c in range(n):
                if G.table[ab][c] != G.table[a][G.table[b][c]]:
                    assoc = CheckItem(assoc.name, False, (a, b, c))
                    break
            if not assoc.ok:
                break
        if not assoc.ok:
            break
    items.append(assoc)

    inv = CheckItem("every element has an inverse", True)
    for a in range(n):
        if G.inverse[a] < 0 or G.table[a][G.inverse[a]] != 0 or G.table[G.inverse[a]][a] != 0:
            inv = CheckItem(inv.name, False, a)
            break
    items.append(inv)

    values = CheckItem("epsilon takes values in {+1, -1}", True)
    for a in range(n):
        if G.epsilon[a] not in (1, -1):
            values = CheckItem(values.name, False, a)
            break
    items.append(values)

    hom = CheckItem("epsilon is a homomorphism", True)
    if values.ok:
        for a in range(n):
            for b in range(n):
                if G.epsilon[G.table[a][b]] != G.epsilon[a] * G.epsilon[b]:
                    hom = CheckItem(hom.name, False, (a, b))
                    break
            if not hom.ok:
                break
    items.append(hom)
    return CheckReport(items)


class OrientedDialgebra:
    """A dialgebra with an oriented group acting on it.

    ``action[g]`` is the matrix of the action of element g.  Use
    ``check_oriented_dialgebra`` to verify the module and twisted
    compatibility laws; the constructor only checks shapes.
    """

    __slots__ = ("base", "group", "action")

    def __init__(self, base: Dialgebra, group: OrientedGroup, action):
        self.base = base
        self.group = group
        self.action = list(action)
        if len(self.action) != group.order:
            raise ValueError("one action matrix per group element required")
        for m in self.action:
            if m.shape() != (base.dim, base.dim):
                raise ValueError(f"action matrices must be {base.dim}x{base.dim}")

    @property
    def dim(self) -> int:
        return self.base.dim

    def act(self, g: int, x: list) -> list:
        return self.action[g].matvec(x)

    def sign(self, g: int) -> int:
        return self.group.sign(g)

    def __repr__(self):
        return f"OrientedDialgebra(dim={self.dim}, group_order={self.group.order})"


def orbit_action(OD: OrientedDialgebra, g: int, x: list) -> list:
    """Apply the action of group element g to a coordinate vector."""
    return OD.act(g, x)


def check_oriented_dialgebra(OD: OrientedDialgebra) -> CheckReport:
    """G-module axioms and the ε-twisted product compatibility, with witnesses."""
    G = OD.group
    D = OD.base
    items = []

    ident = CheckItem("identity acts as the identity matrix", True)
    if OD.action[0] != Matrix.identity(D.dim):
        ident = CheckItem(ident.name, False, 0)
    items.append(ident)

    module = CheckItem("action is a group homomorphism", True)
    for a in G.elements():
        for b in G.elements():
            if OD.action[a].mul(OD.action[b]) != OD.action[G.mul(a, b)]:
                module = CheckItem(module.name, False, (a, b))
                break
        if not module.ok:
            break
    items.append(module)

    invertible = CheckItem("action matrices are invertible", True)
    for g in G.elements():
        if rank(OD.action[g]) != D.dim:
            invertible = CheckItem(invertible.name, False, g)
            break
    items.append(invertible)

    basis = D.basis()
    for label, prod in (("left product", D.lmul), ("right product", D.rmul)):
        compat = CheckItem(f"twisted compatibility of the {label}", True)
        for g in G.elements():
            eps = G.sign(g)
            for i, x in enumerate(basis):
                gx = OD.act(g, x)
                for j, y in enumerate(basis):
                    gy = OD.act(g, y)
                    lhs = OD.act(g, prod(x, y))
                    rhs = prod(gx, gy) if eps == 1 else prod(gy, gx)
                    if lhs != rhs:
                        compat = CheckItem(compat.name, False, (g, i, j))
                        break
                if not compat.ok:
                    break
            if not compat.ok:
                break
        items.append(compat)
    return CheckReport(items)
