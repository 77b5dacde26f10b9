"""Comodule algebras and module algebras over a comultiplication.

A right comodule algebra over (A, Delta) is an algebra B with an
extension rho: B --> B (x) A that is coassociative and counital.  Both
laws are checked in their framed multiplier forms, for all window pairs
(b in B, a in A):

    (rho (x) id)-bar( rho(b)(1 (x) a) )
        = (id (x) Delta)-bar( rho(b) ) (1 (x) 1 (x) a)       [coassociativity]

    (id (x) eps)-bar( rho(b)(1 (x) a) ) = eps(a) iota(b)     [counit law]

The coassociativity left side uses the slice rho(b)(1 (x) a) when it is
iota of an element (then the extension applies directly); otherwise it
falls back to the lift, which is always available.  The right side lifts
rho(b) along id (x) Delta.  A framed variant with an extra (c (x) 1 (x) 1)
replaces the lift by a left slice and is cross-checked on probes, and
when both framed products land in iota(B (x) A) the equality descends to
elements of B (x) A (x) A; that element-level path is reported as its own
verdict.

A right module algebra is a right A-module on an algebra B whose
multiplication intertwines the diagonal action:

    mu((b (x) b') <| Delta(a)) = (b b') <| a.
"""

from __future__ import annotations

from .algebra import (
    Algebra, Element, InputError, ModuleStructure, Verdict,
    reassociate_left, resolve_window, tensor_algebra, tensor_elem, tensor_module,
)
from .multiplier import Multiplier, act_on_module
from .extension import Extension, identity_extension, tensor_extensions
from .bialgebra import Slicer, SliceUndefined, eps_value


class ComoduleAlgebra:
    """Bundle of an algebra B with a coaction into M(B (x) A)."""

    def __init__(self, algebra: Algebra, coaction: Extension, bialgebra,
                 window=None, expansion=2, name=None):
        if coaction.source is not algebra:
            raise InputError("coaction must start at the comodule algebra")
        factors = getattr(coaction.target, "factors", None)
        if factors is None or factors[0] is not algebra or factors[1] is not bialgebra.algebra:
            raise InputError("coaction must land in M(B (x) A)")
        self.algebra = algebra
        self.coaction = coaction
        self.bialgebra = bialgebra
        self.window = window if window is not None else bialgebra.window
        self.expansion = expansion
        self.name = name or f"{algebra.name} over {bialgebra.name}"
        self._slicer = None

    def slicer(self) -> Slicer:
        if self._slicer is None:
            self._slicer = Slicer(self.coaction, window=self.window,
                                  expansion=self.expansion)
        return self._slicer


def _setup(com: ComoduleAlgebra, window, expansion):
    window = com.window if window is None else window
    expansion = com.expansion if expansion is None else expansion
    B, A = com.algebra, com.bialgebra.algebra
    gamma = (com.slicer() if window == com.window and expansion == com.expansion
             else Slicer(com.coaction, window=window, expansion=expansion))
    b_ids = resolve_window(B, window)
    a_ids = resolve_window(A, window)
    return window, expansion, B, A, gamma, b_ids, a_ids


def _triple_frame(space, a_elem) -> Multiplier:
    """(1 (x) 1 (x) a) on B (x) (A (x) A)."""
    left, right = space.factors          # B, A (x) A
    fa, fb = right.factors               # A, A

    def lam(bid):
        i, (j, k) = bid
        return tensor_elem(
            left.basis_element(i),
            tensor_elem(fa.basis_element(j), a_elem * fb.basis_element(k),
                        into=right),
            into=space)

    def rho(bid):
        i, (j, k) = bid
        return tensor_elem(
            left.basis_element(i),
            tensor_elem(fa.basis_element(j), fb.basis_element(k) * a_elem,
                        into=right),
            into=space)

    return Multiplier(space, lam, rho, name="1(x)1(x)a")


def _left_frame3(space, c_elem) -> Multiplier:
    """(c (x) 1 (x) 1) on (B (x) A) (x) A."""
    left, right = space.factors          # B (x) A, A
    fb, fa = left.factors                # B, A

    def lam(bid):
        (i, j), k = bid
        return tensor_elem(
            tensor_elem(c_elem * fb.basis_element(i), fa.basis_element(j),
                        into=left),
            right.basis_element(k), into=space)

    def rho(bid):
        (i, j), k = bid
        return tensor_elem(
            tensor_elem(fb.basis_element(i) * c_elem, fa.basis_element(j),
                        into=left),
            right.basis_element(k), into=space)

    return Multiplier(space, lam, rho, name="c(x)1(x)1")


def _to_right(elem: Element, target) -> Element:
    out = {}
    for ((i, j), k), v in elem.coeffs.items():
        out[(i, (j, k))] = v
    return Element(target, out)


def check_comodule_coassoc(com: ComoduleAlgebra, window=None, expansion=None,
                           method="multiplier", max_probes=None) -> Verdict:
    """Framed coassociativity of the coaction.

    ``method`` "multiplier" checks the pair form on all window pairs
    against every window probe; the right side is lifted along
    id (x) Delta, so no iota membership is needed.  ``method`` "element"
    frames the left leg as well and compares honest elements of
    B (x) A (x) A built from slices; it fails outright when a needed
    slice does not exist.
    """
    if method == "element":
        return _coassoc_element(com, window, expansion)
    window, expansion, B, A, gamma, b_ids, a_ids = _setup(com, window, expansion)
    delta = com.bialgebra.delta
    triple_l = tensor_algebra(com.coaction.target, A)  # (B(x)A)(x)A
    triple_r = tensor_algebra(B, delta.target)          # B(x)(A(x)A)
    rho_x_id = tensor_extensions(
        com.coaction, identity_extension(A, window=window, expansion=expansion))
    id_x_delta = tensor_extensions(
        identity_extension(B, window=window, expansion=expansion), delta)
    probe_ids = resolve_window(triple_l, window)
    if max_probes is not None:
        probe_ids = probe_ids[:max_probes]
    probes = [triple_l.basis_element(p) for p in probe_ids]
    label = (f"{B.window_label(b_ids)} / {A.window_label(a_ids)}, "
             f"{len(probes)} probes")

    for b in b_ids:
        rho_b = com.coaction.basis_multiplier(b)
        lifted = id_x_delta.lift(rho_b)
        for a in a_ids:
            ea = A.basis_element(a)
            try:
                lhs = rho_x_id.apply(gamma.right(b, a))
            except SliceUndefined:
                lhs = rho_x_id.lift(rho_b * gamma._frame("right", a))
            rhs = lifted * _triple_frame(triple_r, ea)
            for p in probes:
                pr = _to_right(p, triple_r)
                if (reassociate_left(rhs.apply_left(pr), triple_l)
                        != lhs.apply_left(p)):
                    return Verdict("comodule coassociativity", "failed", label,
                                   witness=(B.basis_element(b), ea, p),
                                   detail="sides differ as left multipliers")
                if (reassociate_left(rhs.apply_right(pr), triple_l)
                        != lhs.apply_right(p)):
                    return Verdict("comodule coassociativity", "failed", label,
                                   witness=(B.basis_element(b), ea, p),
                                   detail="sides differ as right multipliers")
    status = ("proven" if B.covers_fully(b_ids) and A.covers_fully(a_ids)
              and triple_l.covers_fully(probe_ids)
              else "holds_on_window")
    return Verdict("comodule coassociativity", status, label)


def _coassoc_element(com: ComoduleAlgebra, window, expansion) -> Verdict:
    """Both sides of framed coassociativity as elements, via slices.

    An extra frame c (x) 1 (x) 1 forces every leg into iota, so the two
    sides become elements of (B (x) A) (x) A and B (x) (A (x) A):

        sum_s (c (x) 1) rho(b_(0,a)) (x) b_(1,a)
            = sum_t b_[c,0] (x) Delta(b_[c,1]) (1 (x) a)

    with the right slice of rho at (b, a) and the left slice at (c, b).
    """
    window, expansion, B, A, gamma, b_ids, a_ids = _setup(com, window, expansion)
    dsl = com.bialgebra.slicer(window, expansion)
    triple_l = tensor_algebra(com.coaction.target, A)
    triple_r = tensor_algebra(B, com.bialgebra.delta.target)
    label = f"{B.window_label(b_ids)}^2 x {A.window_label(a_ids)}"
    axiom = "comodule coassociativity (element)"
    f = B.field
    for c in b_ids:
        for b in b_ids:
            try:
                t = gamma.left(c, b)
            except SliceUndefined:
                return Verdict(axiom, "failed", label,
                               witness=(B.basis_element(c), B.basis_element(b)),
                               detail="left framed coaction not iota of an element")
            for a in a_ids:
                try:
                    s = gamma.right(b, a)
                except SliceUndefined:
                    return Verdict(axiom, "failed", label,
                                   witness=(B.basis_element(b), A.basis_element(a)),
                                   detail="right framed coaction not iota of an element")
                lhs: dict = {}
                for (u, v), cs in s.coeffs.items():
                    try:
                        inner = gamma.left(c, u)
                    except SliceUndefined:
                        return Verdict(axiom, "failed", label,
                                       witness=(B.basis_element(c), B.basis_element(u)),
                                       detail="left framed coaction not iota "
                                              "of an element (inner leg)")
                    for (w, x), cl in inner.coeffs.items():
                        _acc(f, lhs, ((w, x), v), f.mul(cs, cl))
                rhs: dict = {}
                for (w, x), ct in t.coeffs.items():
                    for (p, q), cr in dsl.right(x, a).coeffs.items():
                        _acc(f, rhs, (w, (p, q)), f.mul(ct, cr))
                if (Element(triple_l, lhs)
                        != reassociate_left(Element(triple_r, rhs), triple_l)):
                    return Verdict(
                        axiom, "failed", label,
                        witness=(B.basis_element(c), B.basis_element(b),
                                 A.basis_element(a)),
                        detail="sliced sides differ")
    status = ("proven" if B.covers_fully(b_ids) and A.covers_fully(a_ids)
              else "holds_on_window")
    return Verdict(axiom, status, label)


def _acc(f, out, key, val):
    if not val:
        return
    s = f.add(out.get(key, f.zero), val)
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def check_comodule_coassoc_framed(com: ComoduleAlgebra, window=None,
                                  expansion=None, max_probes=24) -> Verdict:
    """(c (x) 1 (x) 1)-framed variant, cross-checked on capped probes.

    Replaces the lift on the right side by the left slice (c (x) 1)rho(b),
    so it exercises an independent computation route.
    """
    window, expansion, B, A, gamma, b_ids, a_ids = _setup(com, window, expansion)
    delta = com.bialgebra.delta
    BA = com.coaction.target
    triple_l = tensor_algebra(BA, A)
    triple_r = tensor_algebra(B, delta.target)
    rho_x_id = tensor_extensions(
        com.coaction, identity_extension(A, window=window, expansion=expansion))
    id_x_delta = tensor_extensions(
        identity_extension(B, window=window, expansion=expansion), delta)
    probe_ids = resolve_window(triple_l, window)[:max_probes]
    probes = [triple_l.basis_element(p) for p in probe_ids]
    label = (f"{len(b_ids)}^2 x {len(a_ids)} framed triples, "
             f"{len(probes)} probes")
    for b in b_ids:
        for a in a_ids:
            ea = A.basis_element(a)
            try:
                s_r = gamma.right(b, a)
            except SliceUndefined:
                return Verdict("comodule coassociativity (framed)", "failed",
                               label, witness=(B.basis_element(b), ea),
                               detail="right framed coaction not iota of an element")
            base_lhs = rho_x_id.apply(s_r)
            for c in b_ids:
                ec = B.basis_element(c)
                lhs = _left_frame3(triple_l, ec) * base_lhs
                try:
                    s_l = gamma.left(c, b)
                except SliceUndefined:
                    return Verdict("comodule coassociativity (framed)", "failed",
                                   label, witness=(ec, B.basis_element(b)),
                                   detail="left framed coaction not iota of an element")
                rhs = id_x_delta.apply(s_l) * _triple_frame(triple_r, ea)
                for p in probes:
                    pr = _to_right(p, triple_r)
                    if (reassociate_left(rhs.apply_left(pr), triple_l)
                            != lhs.apply_left(p)
                            or reassociate_left(rhs.apply_right(pr), triple_l)
                            != lhs.apply_right(p)):
                        return Verdict(
                            "comodule coassociativity (framed)", "failed", label,
                            witness=(ec, B.basis_element(b), ea, p),
                            detail="framed sides differ on probe")
    return Verdict("comodule coassociativity (framed)", "holds_on_window"
                   if not (B.covers_fully(b_ids) and A.covers_fully(a_ids))
                   or max_probes < len(resolve_window(triple_l, window))
                   else "proven", label)


def check_comodule_counit(com: ComoduleAlgebra, window=None, expansion=None) -> Verdict:
    """(id (x) eps)-bar(rho(b)(1 (x) a)) = eps(a) iota(b) on window pairs.

    Both sides are iota of elements of B, so this is an element equality:
    sum b_(0,a) eps(b_(1,a)) = eps(a) b.  A missing slice is flagged as a
    failure of the stronger framed-membership hypothesis.
    """
    window, expansion, B, A, gamma, b_ids, a_ids = _setup(com, window, expansion)
    eps = com.bialgebra.epsilon
    label = f"{B.window_label(b_ids)} / {A.window_label(a_ids)}"
    f = B.field
    for b in b_ids:
        eb = B.basis_element(b)
        for a in a_ids:
            ea = A.basis_element(a)
            try:
                s = gamma.right(b, a)
            except SliceUndefined:
                return Verdict("comodule counit", "failed", label,
                               witness=(eb, ea),
                               detail="framed coaction is not iota of an element")
            acc: dict = {}
            for (u, v), c in s.coeffs.items():
                scal = eps_value(eps, A.basis_element(v))
                if scal:
                    t = f.add(acc.get(u, f.zero), f.mul(c, scal))
                    if t:
                        acc[u] = t
                    else:
                        acc.pop(u, None)
            got = Element(B, acc)
            want = eb.scale(eps_value(eps, ea))
            if got != want:
                return Verdict("comodule counit", "failed", label,
                               witness=(eb, ea),
                               detail=f"(id(x)eps) of slice = {got}, want {want}")
    status = ("proven" if B.covers_fully(b_ids) and A.covers_fully(a_ids)
              else "holds_on_window")
    return Verdict("comodule counit", status, label)


def check_module_algebra(module: ModuleStructure, delta: Extension,
                         window=None, expansion=2) -> Verdict:
    """mu((b (x) b') <| Delta(a)) = (b b') <| a on window triples.

    ``module`` is a right module over A = delta.source whose carrier is
    itself an algebra; the left side moves b (x) b' with the diagonal
    action on the tensor module.
    """
    A = delta.source
    B = module.space
    if not isinstance(B, Algebra):
        raise InputError("module-algebra check needs an algebra carrier")
    if module.algebra is not A or module.side != "right":
        raise InputError("module-algebra check wants a right A-module")
    T = tensor_module(module, module)
    b_ids = resolve_window(B, window)
    a_ids = resolve_window(A, window)
    pair_window = [(i, j) for i in b_ids for j in b_ids]
    if isinstance(window, int) and not A.finite:
        scaled = tuple(A.window_ids(window * expansion))
    else:
        scaled = a_ids
    aa_window = [(i, j) for i in scaled for j in scaled]
    label = f"{B.window_label(b_ids)} / {A.window_label(a_ids)}"
    for bi in b_ids:
        for bj in b_ids:
            x = tensor_elem(B.basis_element(bi), B.basis_element(bj), into=T.space)
            for a in a_ids:
                moved = act_on_module(T, x, delta.basis_multiplier(a),
                                      window_m=pair_window, window_a=aa_window)
                lhs = B.zero()
                for (p, q), c in moved.coeffs.items():
                    lhs = lhs + (B.basis_element(p) * B.basis_element(q)).scale(c)
                rhs = module.act(B.basis_element(bi) * B.basis_element(bj),
                                 A.basis_element(a))
                if lhs != rhs:
                    return Verdict(
                        "module algebra", "failed", label,
                        witness=(B.basis_element(bi), B.basis_element(bj),
                                 A.basis_element(a)),
                        detail=f"mu of moved tensor = {lhs}, (bb')<|a = {rhs}")
    status = ("proven" if B.covers_fully(b_ids) and A.covers_fully(a_ids)
              else "holds_on_window")
    return Verdict("module algebra", status, label)
