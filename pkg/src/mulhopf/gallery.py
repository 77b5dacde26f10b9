"""Worked examples: finite function algebras, finitely supported function
algebras on countable monoids, matrix-unit algebras, and the small
degenerate algebras used as negative controls.

Every entry is exact.  The infinite-dimensional entries are oracle
algebras with certified local units (indicator sums over the window), so
all window computations downstream are exact too.

``build("kfun_cyclic(4)")`` style names are what the command line accepts;
the Python builders take keyword arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .fields import QQ
from .algebra import (
    Algebra, Element, InputError, ModuleStructure, finite_algebra,
    oracle_algebra, resolve_window, tensor_algebra,
)
from .multiplier import Multiplier, iota
from .extension import Extension
from .bialgebra import MultiplierBialgebra, counit_extension
from .hopf import MultiplierMap
from .comodule import ComoduleAlgebra


@dataclass
class GalleryEntry:
    name: str
    algebra: Algebra
    bialgebra: MultiplierBialgebra | None = None
    notes: str = ""
    default_window: int | None = None
    params: dict = dc_field(default_factory=dict)


# ---------------------------------------------------------------------------
# k-valued functions on Z/n: finite, unital, the everything-works example


def kfun_cyclic(n: int, field=QQ) -> GalleryEntry:
    """Functions on the cyclic group of order n, pointwise product.

    delta(d_k) = sum_{i+j=k} d_i (x) d_j, eps(d_k) = [k = 0],
    S(d_k) = d_{-k}; a finite multiplier Hopf structure (everything is
    honest and unital here, which makes it the base case the oracle
    entries are checked against).
    """
    if n < 1:
        raise InputError("kfun_cyclic needs n >= 1")
    ids = list(range(n))
    one = field.one
    table = {(i, i): {i: one} for i in ids}
    unit = {i: one for i in ids}
    A = finite_algebra(field, ids, table, unit=unit,
                       name=f"kfun_cyclic({n})", fmt_id=lambda i: f"d{i}")
    AA = tensor_algebra(A, A)

    def delta_rule(k):
        elem = Element(AA, {(i, (k - i) % n): one for i in ids})
        return iota(AA, elem)

    delta = Extension(A, AA, delta_rule, name="Delta")
    eps = counit_extension(A, {k: (one if k == 0 else field.zero) for k in ids})
    smap = MultiplierMap(A, lambda t: iota(A, A.basis_element((n - t) % n)),
                         name="S")
    bundle = MultiplierBialgebra(A, delta, eps, A.basis_element(0),
                                 name=f"kfun_cyclic({n})", antipode=smap)
    return GalleryEntry(f"kfun_cyclic({n})", A, bundle,
                        notes="finite multiplier Hopf structure",
                        params={"n": n})


# ---------------------------------------------------------------------------
# finitely supported functions on Z: the flagship oracle example


def kfin_Z(field=QQ, window=4) -> GalleryEntry:
    """Finitely supported functions on the integers, pointwise product.

    No unit, but indicator sums over any window are local units.  The
    additive-group comultiplication delta(d_k) acts as the indicator of
    i + j = k; eps(d_k) = [k = 0]; S(d_k) = d_{-k}.  Infinite-dimensional,
    so every verdict is window-relative.
    """
    one = field.one

    A = oracle_algebra(
        field,
        contains=lambda bid: isinstance(bid, int) and not isinstance(bid, bool),
        window=lambda n: range(-n, n + 1),
        mul_rule=lambda i, j: ({i: one} if i == j else {}),
        local_unit_for=lambda ids: {i: one for i in ids},
        describe="K(Z)", name="kfin_Z", fmt_id=lambda i: f"d{i}")
    AA = tensor_algebra(A, A)

    def delta_rule(k):
        def lam(bid):
            return Element(AA, {bid: one} if bid[0] + bid[1] == k else {})
        return Multiplier(AA, lam, lam, name=f"Delta(d{k})")

    delta = Extension(A, AA, delta_rule, name="Delta",
                      source_window=window, target_window=window)
    eps = counit_extension(
        A, lambda bid: one if bid == 0 else field.zero)
    smap = MultiplierMap(A, lambda t: iota(A, A.basis_element(-t)), name="S")
    bundle = MultiplierBialgebra(A, delta, eps, A.basis_element(0),
                                 window=window, name="kfin_Z", antipode=smap)
    return GalleryEntry("kfin_Z", A, bundle,
                        notes="oracle multiplier Hopf structure, window-exact",
                        default_window=window, params={"window": window})


def kfin_N(field=QQ, window=4) -> GalleryEntry:
    """Finitely supported functions on the naturals.

    Same pointwise product and additive comultiplication as kfin_Z, but
    the monoid has no inverses: T1 degenerates (d_0 (x) d_1 maps to zero)
    and no antipode exists.  Its role is to exercise the failure paths.
    """
    one = field.one
    A = oracle_algebra(
        field,
        contains=lambda bid: isinstance(bid, int) and not isinstance(bid, bool) and bid >= 0,
        window=lambda n: range(0, n + 1),
        mul_rule=lambda i, j: ({i: one} if i == j else {}),
        local_unit_for=lambda ids: {i: one for i in ids},
        describe="K(N)", name="kfin_N", fmt_id=lambda i: f"d{i}")
    AA = tensor_algebra(A, A)

    def delta_rule(k):
        def lam(bid):
            return Element(AA, {bid: one} if bid[0] + bid[1] == k else {})
        return Multiplier(AA, lam, lam, name=f"Delta(d{k})")

    delta = Extension(A, AA, delta_rule, name="Delta",
                      source_window=window, target_window=window)
    eps = counit_extension(A, lambda bid: one if bid == 0 else field.zero)
    bundle = MultiplierBialgebra(A, delta, eps, A.basis_element(0),
                                 window=window, name="kfin_N", antipode=None)
    return GalleryEntry("kfin_N", A, bundle,
                        notes="bialgebra without antipode (monoid not a group)",
                        default_window=window, params={"window": window})


# ---------------------------------------------------------------------------
# matrix units over N x N: non-commutative oracle algebra


def matfin(field=QQ, window=3) -> GalleryEntry:
    """Matrix units E_ij, i, j natural numbers, E_ij E_kl = [j=k] E_il.

    Finitely supported infinite matrices; sum of E_ii over the window
    indices is a local unit.  Associative, idempotent, non-degenerate,
    and non-commutative; no comultiplication is bundled.
    """
    one = field.one

    def contains(bid):
        return (isinstance(bid, tuple) and len(bid) == 2
                and all(isinstance(x, int) and not isinstance(x, bool) and x >= 0
                        for x in bid))

    def local(ids):
        diag = sorted({x for pair in ids for x in pair})
        return {(i, i): one for i in diag}

    A = oracle_algebra(
        field, contains=contains,
        window=lambda n: tuple((i, j) for i in range(n + 1) for j in range(n + 1)),
        mul_rule=lambda p, q: ({(p[0], q[1]): one} if p[1] == q[0] else {}),
        local_unit_for=local,
        describe="MatFin(N)", name="matfin",
        fmt_id=lambda p: f"E({p[0]},{p[1]})")
    return GalleryEntry("matfin", A,
                        notes="non-commutative oracle algebra, no coproduct",
                        default_window=window, params={"window": window})


# ---------------------------------------------------------------------------
# negative controls


def rowalg2(field=QQ) -> GalleryEntry:
    """Span of E11, E12 inside 2x2 matrices.

    Has left local units (E11) but no right ones; E12 annihilates the
    whole algebra from the left, so non-degeneracy fails with witness E12.
    """
    one = field.one
    A = finite_algebra(
        field, ["E11", "E12"],
        {("E11", "E11"): {"E11": one}, ("E11", "E12"): {"E12": one}},
        name="rowalg2")
    return GalleryEntry("rowalg2", A, notes="degenerate: one-sided annihilator")


def zero1(field=QQ) -> GalleryEntry:
    """One-dimensional algebra with zero multiplication; fails idempotency."""
    A = finite_algebra(field, ["z"], {}, name="zero1")
    return GalleryEntry("zero1", A, notes="degenerate: A*A = 0")


def nand_delta_bundle(field=QQ) -> MultiplierBialgebra:
    """Perturbed coproduct on kfun_cyclic(2): delta(d_k) = indicator of
    NAND(i, j) = k.

    A perfectly valid extension (the fibers partition the square), but
    NAND is not associative, so sliced coassociativity fails; the first
    witness triple in scan order is (d0, d0, d1).
    """
    base = kfun_cyclic(2, field=field)
    A = base.algebra
    AA = tensor_algebra(A, A)
    one = field.one
    fibers = {0: [(1, 1)], 1: [(0, 0), (0, 1), (1, 0)]}

    def delta_rule(k):
        return iota(AA, Element(AA, {p: one for p in fibers[k]}))

    delta = Extension(A, AA, delta_rule, name="Delta~")
    eps = base.bialgebra.epsilon
    return MultiplierBialgebra(A, delta, eps, A.basis_element(0),
                               name="kfun_cyclic(2)+nand-delta")


def nand_delta(field=QQ) -> GalleryEntry:
    b = nand_delta_bundle(field)
    return GalleryEntry("nand_delta", b.algebra, bialgebra=b,
                        notes="negative control: coassociativity fails")


def perturb_antipode_map(bundle: MultiplierBialgebra, seed: int) -> MultiplierMap:
    """Deterministically damaged copy of the bundled antipode.

    Either scales one window value or adds a stray iota term; since the
    antipode of a Hopf structure is unique, either change must fail the
    defining identities.
    """
    if bundle.antipode is None:
        raise InputError(f"{bundle.name} has no antipode to perturb")
    alg = bundle.algebra
    rng = random.Random(seed)
    ids = list(resolve_window(alg, bundle.window))
    t = rng.choice(ids)
    true_s = bundle.antipode
    if rng.random() < 0.5:
        c = alg.field.coerce(rng.randint(2, 7))
        changed = true_s.basis(t).scale(c)
        tag = f"scaled by {alg.field.format(c)}"
    else:
        u = rng.choice(ids)
        changed = true_s.basis(t) + iota(alg, alg.basis_element(u))
        tag = f"shifted by iota({alg.fmt_id(u)})"

    def rule(bid):
        return changed if bid == t else true_s.basis(bid)

    return MultiplierMap(alg, rule, name=f"S-perturbed[{alg.fmt_id(t)} {tag}]")


# ---------------------------------------------------------------------------
# derived structures on bundles


def self_comodule(bundle: MultiplierBialgebra) -> ComoduleAlgebra:
    """Every comultiplication makes its algebra a comodule algebra over itself."""
    return ComoduleAlgebra(bundle.algebra, bundle.delta, bundle,
                           window=bundle.window, expansion=bundle.expansion,
                           name=f"{bundle.name} over itself")


def trivial_module_algebra(bundle: MultiplierBialgebra) -> ModuleStructure:
    """A acting on itself through eps: r <| a = eps(a) r; a module algebra."""
    from .bialgebra import eps_value
    A = bundle.algebra

    def rule(r_id, a_id):
        v = eps_value(bundle.epsilon, A.basis_element(a_id))
        return {r_id: v} if v else {}

    return ModuleStructure(A, A, "right", rule, name=f"{A.name} via eps")


# ---------------------------------------------------------------------------
# seeded random families (property-test fodder, deterministic per seed)


_STRUCTURES = ("diagonal", "cyclic_group", "upper_triangular", "full_matrix")


def random_algebra(seed: int, field=QQ) -> Algebra:
    """Known-good structure conjugated by a seeded invertible basis change.

    Base structures are k^n, the group algebra of Z/n, upper-triangular
    2x2 matrices, or all of M_2(k); all associative, idempotent, and
    non-degenerate, properties a basis change preserves.
    """
    rng = random.Random(seed)
    kind = rng.choice(_STRUCTURES)
    if kind == "diagonal":
        dim = rng.randint(2, 4)
        structure = {(i, i, i): field.one for i in range(dim)}
    elif kind == "cyclic_group":
        dim = rng.randint(2, 4)
        structure = {(i, j, (i + j) % dim): field.one
                     for i in range(dim) for j in range(dim)}
    else:
        units = ([(0, 0), (0, 1), (1, 1)] if kind == "upper_triangular"
                 else [(0, 0), (0, 1), (1, 0), (1, 1)])
        dim = len(units)
        structure = {}
        for a, (ra, ca) in enumerate(units):
            for b, (rb, cb) in enumerate(units):
                if ca == rb:
                    structure[(a, b, units.index((ra, cb)))] = field.one
    P, Pinv = _random_change(rng, field, dim)
    table: dict = {}
    for i in range(dim):
        for j in range(dim):
            acc = [field.zero] * dim
            for a in range(dim):
                if not P[i][a]:
                    continue
                for b in range(dim):
                    c = field.mul(P[i][a], P[j][b])
                    if not c:
                        continue
                    for (sa, sb, sc), v in structure.items():
                        if sa == a and sb == b:
                            for t in range(dim):
                                acc[t] = field.add(
                                    acc[t], field.mul(c, field.mul(v, Pinv[sc][t])))
            coeffs = {t: acc[t] for t in range(dim) if acc[t]}
            if coeffs:
                table[(i, j)] = coeffs
    return finite_algebra(field, list(range(dim)), table,
                          name=f"rand[{seed}:{kind}]", fmt_id=lambda i: f"f{i}")


def _random_change(rng, field, dim):
    """Invertible P (unit-triangular product) and its exact inverse."""
    lower = [[field.one if i == j else
              (field.coerce(rng.randint(-2, 2)) if i > j else field.zero)
              for j in range(dim)] for i in range(dim)]
    upper = [[field.one if i == j else
              (field.coerce(rng.randint(-2, 2)) if i < j else field.zero)
              for j in range(dim)] for i in range(dim)]

    def matmul(X, Y):
        return [[_dot(field, X[i], [Y[k][j] for k in range(dim)])
                 for j in range(dim)] for i in range(dim)]

    def inv_unit_tri(M, lower_tri):
        # forward substitution column by column; diagonal is all ones
        N = [[field.one if i == j else field.zero for j in range(dim)]
             for i in range(dim)]
        order = tuple(range(dim)) if lower_tri else tuple(range(dim - 1, -1, -1))
        for col in range(dim):
            for i in order:
                s = field.zero
                for k in (range(i) if lower_tri else range(i + 1, dim)):
                    s = field.add(s, field.mul(M[i][k], N[k][col]))
                N[i][col] = field.sub(field.one if i == col else field.zero, s)
        return N

    P = matmul(lower, upper)
    Pinv = matmul(inv_unit_tri(upper, False), inv_unit_tri(lower, True))
    return P, Pinv


def _dot(field, xs, ys):
    acc = field.zero
    for x, y in zip(xs, ys):
        acc = field.add(acc, field.mul(x, y))
    return acc


def random_extension(seed: int, field=QQ) -> Extension:
    """Seeded extension drawn from four shapes.

    Identity on a random algebra; a coordinate projection k^d -> k^d'
    (dual to an injection of point sets); a block-diagonal embedding
    k^d' -> k^d (dual to a surjection); or the group-algebra map induced
    by Z/n ->> Z/m for m dividing n.
    """
    rng = random.Random(seed)
    shape = rng.choice(("identity", "projection", "blocks", "group_quotient"))
    one = field.one
    if shape == "identity":
        from .extension import identity_extension
        return identity_extension(random_algebra(rng.randint(0, 10**6), field=field))
    if shape == "projection":
        d = rng.randint(2, 4)
        dp = rng.randint(1, d)
        B = _kpow(field, d, f"kp{d}")
        A = _kpow(field, dp, f"kp{dp}x")
        return Extension(B, A,
                         lambda i: (iota(A, A.basis_element(i)) if i < dp
                                    else _zero_mult(A)),
                         name=f"proj[{seed}]")
    if shape == "blocks":
        dp = rng.randint(1, 3)
        sizes = [rng.randint(1, 2) for _ in range(dp)]
        d = sum(sizes)
        B = _kpow(field, dp, f"kp{dp}")
        A = _kpow(field, d, f"kp{d}y")
        starts = [sum(sizes[:i]) for i in range(dp)]

        def rule(i):
            block = Element(A, {starts[i] + r: one for r in range(sizes[i])})
            return iota(A, block)

        return Extension(B, A, rule, name=f"blocks[{seed}]")
    m = rng.randint(1, 3)
    n = m * rng.randint(1, 3)
    B = _group_algebra(field, n)
    A = _group_algebra(field, m)
    return Extension(B, A, lambda i: iota(A, A.basis_element(i % m)),
                     name=f"quot[{seed}]")


def _kpow(field, d, name):
    return finite_algebra(
        field, list(range(d)), {(i, i): {i: field.one} for i in range(d)},
        unit={i: field.one for i in range(d)}, name=name,
        fmt_id=lambda i: f"p{i}")


def _group_algebra(field, n):
    return finite_algebra(
        field, list(range(n)),
        {(i, j): {(i + j) % n: field.one} for i in range(n) for j in range(n)},
        unit={0: field.one}, name=f"k[Z/{n}]", fmt_id=lambda i: f"g{i}")


def _zero_mult(alg):
    z = alg.zero()
    return Multiplier(alg, lambda bid: z, lambda bid: z, name="0")


# ---------------------------------------------------------------------------
# registry


_BUILDERS = {
    "kfun_cyclic": (kfun_cyclic, ("n",)),
    "kfin_Z": (kfin_Z, ()),
    "kfin_N": (kfin_N, ()),
    "matfin": (matfin, ()),
    "rowalg2": (rowalg2, ()),
    "zero1": (zero1, ()),
    "nand_delta": (nand_delta, ()),
}


def gallery_names():
    return tuple(_BUILDERS)


def build(spec: str) -> GalleryEntry:
    """Resolve "name" or "name(args)" against the registry."""
    spec = spec.strip()
    if "(" in spec:
        if not spec.endswith(")"):
            raise InputError(f"malformed gallery name {spec!r}")
        name, argstr = spec[:-1].split("(", 1)
        args = [a.strip() for a in argstr.split(",")] if argstr.strip() else []
    else:
        name, args = spec, []
    entry = _BUILDERS.get(name)
    if entry is None:
        raise InputError(
            f"unknown gallery entry {name!r}; known: {', '.join(sorted(_BUILDERS))}")
    builder, param_names = entry
    if len(args) > len(param_names):
        raise InputError(f"{name} takes at most {len(param_names)} parameter(s)")
    try:
        values = [int(a) for a in args]
    except ValueError:
        raise InputError(f"gallery parameters must be integers: {spec!r}") from None
    return builder(*values)
