"""Algebra extensions: morphisms B -> M(A) inducing a good bimodule on A.

An extension is an algebra map f: B -> M(A) (given on basis ids) whose
induced actions b.a = f(b) |> a and a.b = a <| f(b) make A an idempotent
non-degenerate B-bimodule.  These are the morphisms B --> A of the
category the rest of the package works in; comultiplications, counits,
and coactions are all instances.

The central tool is the lift to M(B): with a = sum_i b_i . a_i in B.A and
a = sum_j a'_j . b'_j in A.B,

    fbar(x) |> a = sum_i f(lam_x(b_i)) |> a_i
    a <| fbar(x) = sum_j a'_j <| f(rho_x(b'_j))

which is well defined independently of the decompositions.  Oracle-tier
decomposition searches draw the B side from the expansion-scaled window,
since products routinely leave the base window (the certificates stay
tagged with the base window).
"""

from __future__ import annotations

from .linalg import GaussianSolver, SparseMatrix, vec_canonical
from .algebra import (
    Algebra, Element, InputError, InvariantViolation, ModuleStructure, Verdict,
    WindowInsufficiency, resolve_window, tensor_algebra, tensor_elem,
)
from .multiplier import Multiplier, act_on_module, multiplier_eq


def _scaled_window(space, window, expansion):
    """Ids for the expansion-scaled window (same ids when finite/explicit)."""
    if window is None or isinstance(window, int):
        if space.finite:
            return tuple(space.window_ids(None))
        if window is None:
            raise WindowInsufficiency(f"{space.name} needs an explicit window")
        return tuple(space.window_ids(window * expansion))
    return tuple(window)


class Extension:
    """f: B -> M(A) with window-certified structure.

    ``rule`` maps a source basis id to a Multiplier on the target (or to a
    pair of basis-action callables).  Construct through ``from_map`` or
    ``from_bimodule`` to get the certificates; the raw constructor is for
    internal wiring and tests.
    """

    def __init__(self, source: Algebra, target: Algebra, rule, name="f",
                 source_window=None, target_window=None, expansion=2):
        self.source = source
        self.target = target
        self._rule = rule
        self.name = name
        self.expansion = expansion
        self.source_window = source_window
        self.target_window = target_window
        self._mult_cache: dict = {}
        self._ba_span = None
        self._ab_span = None
        self.certificates: dict = {}

    # -- windows ------------------------------------------------------------

    @property
    def source_ids(self):
        return resolve_window(self.source, self.source_window)

    @property
    def target_ids(self):
        return resolve_window(self.target, self.target_window)

    @property
    def source_search_ids(self):
        return _scaled_window(self.source, self.source_window, self.expansion)

    def window_label(self):
        return (f"{self.source.window_label(self.source_ids)} -> "
                f"{self.target.window_label(self.target_ids)}")

    # -- the map ------------------------------------------------------------

    def basis_multiplier(self, bid) -> Multiplier:
        x = self._mult_cache.get(bid)
        if x is None:
            raw = self._rule(bid)
            if not isinstance(raw, Multiplier):
                lam, rho = raw
                raw = Multiplier(self.target, lam, rho)
            x = self._mult_cache[bid] = raw
        return x

    def apply(self, b: Element) -> Multiplier:
        """Linear extension of the basis rule; value in M(target)."""
        if b.space is not self.source:
            raise InputError(f"{self.name} wants elements of {self.source.name}")
        items = b.sorted_items()
        if not items:
            zero = self.target.zero()
            return Multiplier(self.target, lambda bid: zero, lambda bid: zero)
        acc = self.basis_multiplier(items[0][0]).scale(items[0][1])
        for bid, c in items[1:]:
            acc = acc + self.basis_multiplier(bid).scale(c)
        return acc

    def lact(self, b: Element, a: Element) -> Element:
        """b . a = f(b) |> a."""
        return self.apply(b).apply_left(a)

    def ract(self, a: Element, b: Element) -> Element:
        """a . b = a <| f(b)."""
        return self.apply(b).apply_right(a)

    # -- decompositions over B.A and A.B -------------------------------------

    def _span(self, side):
        attr = "_ba_span" if side == "ba" else "_ab_span"
        span = getattr(self, attr)
        if span is None:
            cols = []
            for i in self.source_search_ids:
                fi = self.basis_multiplier(i)
                for j in self.target_ids:
                    ej = self.target.basis_element(j)
                    hit = fi.apply_left(ej) if side == "ba" else fi.apply_right(ej)
                    if not hit.is_zero():
                        cols.append(((i, j), hit.coeffs))
            span = GaussianSolver(SparseMatrix.from_columns(self.target.field, cols))
            setattr(self, attr, span)
        return span

    def _decompose(self, a: Element, side):
        sol = self._span(side).solve(a.coeffs)
        if sol is None:
            return None
        skey, tkey = self.source.sort_key, self.target.sort_key
        return [(c, i, j) for (i, j), c in
                sorted(sol.items(), key=lambda kv: (skey(kv[0][0]), tkey(kv[0][1])))]

    def decompose_ba(self, a: Element):
        """a = sum c * (f(e_i) |> e_j), pivot-order first solution."""
        return self._decompose(a, "ba")

    def decompose_ab(self, a: Element):
        """a = sum c * (e_j <| f(e_i))."""
        return self._decompose(a, "ab")

    # -- lift to M(B) --------------------------------------------------------

    def lift(self, x: Multiplier) -> Multiplier:
        """fbar(x) in M(target) for x in M(source); fbar o iota_B = f."""
        if x.alg is not self.source:
            raise InputError("lift wants a multiplier on the source algebra")
        ext = self

        def lam(bid):
            a = ext.target.basis_element(bid)
            dec = ext.decompose_ba(a)
            if dec is None:
                raise WindowInsufficiency(
                    f"{a} has no B.A decomposition over {ext.window_label()}")
            out = ext.target.zero()
            for c, i, j in dec:
                moved = ext.apply(x.lam_basis(i))
                out = out + moved.apply_left(ext.target.basis_element(j)).scale(c)
            return out

        def rho(bid):
            a = ext.target.basis_element(bid)
            dec = ext.decompose_ab(a)
            if dec is None:
                raise WindowInsufficiency(
                    f"{a} has no A.B decomposition over {ext.window_label()}")
            out = ext.target.zero()
            for c, i, j in dec:
                moved = ext.apply(x.rho_basis(i))
                out = out + moved.apply_right(ext.target.basis_element(j)).scale(c)
            return out

        return Multiplier(self.target, lam, rho,
                          name=f"{self.name}-bar({x.name or '?'})")

    # -- validation ----------------------------------------------------------

    def validate(self, pair_sample=None) -> list:
        """Certificate verdicts; stores them on the extension.

        ``pair_sample`` optionally limits the multiplicativity pair scan
        (oracle windows); finite algebras always scan every pair.
        """
        verdicts = []
        src_ids = self.source_ids
        probes = [self.target.basis_element(j) for j in self.target_ids]
        base = ("proven" if self.source.covers_fully(src_ids)
                and self.target.covers_fully(self.target_ids) else "holds_on_window")
        label = self.window_label()

        pairs = [(i, j) for i in src_ids for j in src_ids]
        if pair_sample is not None and not self.source.finite:
            pairs = pair_sample
        mult_v = Verdict("extension multiplicativity", base, label,
                         detail=f"{len(pairs)} pairs")
        for i, j in pairs:
            prod = self.apply(self.source.mul_basis(i, j))
            direct = self.basis_multiplier(i) * self.basis_multiplier(j)
            eq = multiplier_eq(prod, direct, probes, strict=base)
            if not eq.ok:
                mult_v = Verdict(
                    "extension multiplicativity", "failed", label,
                    witness=(self.source.basis_element(i), self.source.basis_element(j)),
                    detail=f"f(ei*ej) != f(ei)f(ej) at probe {eq.witness[0]}")
                break
        verdicts.append(mult_v)

        idem_v = Verdict("extension idempotency", base, label)
        for j in self.target_ids:
            a = self.target.basis_element(j)
            missing = "B.A" if self.decompose_ba(a) is None else (
                "A.B" if self.decompose_ab(a) is None else None)
            if missing:
                if not (self.source.finite and self.target.finite):
                    raise WindowInsufficiency(
                        f"{a} of {self.target.name} has no {missing} decomposition "
                        f"over {label}; enlarge the window")
                idem_v = Verdict("extension idempotency", "failed", label,
                                 witness=(a,), detail=f"no {missing} decomposition")
                break
        verdicts.append(idem_v)

        nondeg_v = Verdict("extension non-degeneracy", base, label)
        search = self.source_search_ids
        for side in ("right", "left"):
            cols = []
            for t in self.target_ids:
                et = self.target.basis_element(t)
                col: dict = {}
                for i in search:
                    fi = self.basis_multiplier(i)
                    hit = fi.apply_right(et) if side == "right" else fi.apply_left(et)
                    for bid, v in hit.coeffs.items():
                        col[(i, bid)] = v
                cols.append((t, col))
            kern = GaussianSolver(
                SparseMatrix.from_columns(self.target.field, cols)).kernel_basis()
            if kern:
                w = Element(self.target, vec_canonical(self.target.field, kern[0]))
                nondeg_v = Verdict("extension non-degeneracy", "failed", label,
                                   witness=(w,),
                                   detail=f"killed by every f(b) on the {side}")
                break
        verdicts.append(nondeg_v)

        self.certificates = {v.axiom: v for v in verdicts}
        return verdicts

    @classmethod
    def from_map(cls, source, target, rule, name="f", source_window=None,
                 target_window=None, expansion=2, validate=True, pair_sample=None):
        ext = cls(source, target, rule, name=name, source_window=source_window,
                  target_window=target_window, expansion=expansion)
        if validate:
            for v in ext.validate(pair_sample=pair_sample):
                if not v.ok:
                    raise InvariantViolation(v)
        return ext

    @classmethod
    def from_bimodule(cls, source, target, left_rule, right_rule, name="f",
                      source_window=None, target_window=None, expansion=2,
                      validate=True):
        """Build from bimodule actions b.a, a.b after checking bilinearity.

        left_rule(b_id, a_id) and right_rule(a_id, b_id) give the actions on
        basis ids.  Checked first, with witness triples: the target product
        is B-bilinear and balanced, and the actions compose associatively.
        """
        ext = cls(source, target,
                  lambda bid: (lambda aid, b=bid: left_rule(b, aid),
                               lambda aid, b=bid: right_rule(aid, b)),
                  name=name, source_window=source_window,
                  target_window=target_window, expansion=expansion)
        src_ids = resolve_window(source, source_window)
        tgt_ids = resolve_window(target, target_window)
        label = ext.window_label()

        def L(b, a):
            return ext.lact(b, a)

        def R(a, b):
            return ext.ract(a, b)

        for bi in src_ids:
            b = source.basis_element(bi)
            for ai in tgt_ids:
                a = target.basis_element(ai)
                for ci in tgt_ids:
                    a2 = target.basis_element(ci)
                    checks = (
                        ("mu left B-linear", L(b, a * a2), L(b, a) * a2, (b, a, a2)),
                        ("mu right B-linear", R(a * a2, b), a * R(a2, b), (a, a2, b)),
                        ("balanced", R(a, b) * a2, a * L(b, a2), (a, b, a2)),
                    )
                    for tag, lhs, rhs, wit in checks:
                        if lhs != rhs:
                            raise InvariantViolation(Verdict(
                                f"bimodule {tag}", "failed", label, witness=wit,
                                detail=f"{lhs} vs {rhs}"))
            for bj in src_ids:
                b2 = source.basis_element(bj)
                prod = source.mul_basis(bi, bj)
                for ai in tgt_ids:
                    a = target.basis_element(ai)
                    if L(prod, a) != L(b, L(b2, a)):
                        raise InvariantViolation(Verdict(
                            "bimodule left associativity", "failed", label,
                            witness=(b, b2, a), detail="(bb').a != b.(b'.a)"))
                    if R(a, prod) != R(R(a, b), b2):
                        raise InvariantViolation(Verdict(
                            "bimodule right associativity", "failed", label,
                            witness=(a, b, b2), detail="a.(bb') != (a.b).b'"))
        if validate:
            for v in ext.validate():
                if not v.ok:
                    raise InvariantViolation(v)
        return ext


def identity_extension(alg: Algebra, window=None, expansion=2, validate=False) -> Extension:
    from .multiplier import iota as _iota
    ext = Extension(alg, alg, lambda bid: _iota(alg, alg.basis_element(bid)),
                    name=f"id_{alg.name}", source_window=window,
                    target_window=window, expansion=expansion)
    if validate:
        for v in ext.validate():
            if not v.ok:
                raise InvariantViolation(v)
    return ext


def extension_from_map(source, target, rule, **kw) -> Extension:
    return Extension.from_map(source, target, rule, **kw)


def extension_from_bimodule(source, target, left_rule, right_rule, **kw) -> Extension:
    return Extension.from_bimodule(source, target, left_rule, right_rule, **kw)


def lift_to_multiplier(ext: Extension, x: Multiplier) -> Multiplier:
    return ext.lift(x)


def compose_extensions(f: Extension, g: Extension, name=None, validate=False) -> Extension:
    """g after f: the structure map is gbar o f, from B into M(R)."""
    if f.target is not g.source:
        raise InputError("compose_extensions: target of f must be source of g")
    composed = Extension(
        f.source, g.target, lambda bid: g.lift(f.basis_multiplier(bid)),
        name=name or f"{g.name}o{f.name}", source_window=f.source_window,
        target_window=g.target_window, expansion=max(f.expansion, g.expansion))
    if validate:
        for v in composed.validate():
            if not v.ok:
                raise InvariantViolation(v)
    return composed


def psi_embed(parts, into=None) -> Multiplier:
    """Componentwise multiplier x1 (x) ... (x) xn on the fold-left tensor algebra."""
    parts = list(parts)
    if not parts:
        raise InputError("psi_embed needs at least one multiplier")
    acc = parts[0]
    for nxt in parts[1:]:
        acc = _psi_pair(acc, nxt)
    if into is not None and acc.alg is not into:
        raise InputError("psi_embed result lives on a different tensor algebra")
    return acc


def _psi_pair(x: Multiplier, y: Multiplier) -> Multiplier:
    txt = tensor_algebra(x.alg, y.alg)

    def lam(bid):
        i, j = bid
        return tensor_elem(x.lam_basis(i), y.lam_basis(j), into=txt)

    def rho(bid):
        i, j = bid
        return tensor_elem(x.rho_basis(i), y.rho_basis(j), into=txt)

    return Multiplier(txt, lam, rho, name=f"psi({x.name},{y.name})")


def tensor_extensions(f: Extension, g: Extension, validate=False, **kw) -> Extension:
    """(f (x) g): B (x) B' --> A (x) A', structure map Psi o (f (x) g)."""
    src = tensor_algebra(f.source, g.source)
    tgt = tensor_algebra(f.target, g.target)
    ext = Extension(
        src, tgt,
        lambda bid: _psi_pair(f.basis_multiplier(bid[0]), g.basis_multiplier(bid[1])),
        name=f"{f.name}(x){g.name}",
        source_window=kw.get("source_window", _join_windows(f.source_window, g.source_window)),
        target_window=kw.get("target_window", _join_windows(f.target_window, g.target_window)),
        expansion=max(f.expansion, g.expansion))
    if validate:
        for v in ext.validate():
            if not v.ok:
                raise InvariantViolation(v)
    return ext


def _join_windows(w1, w2):
    """Conservative join: both int windows -> their min; else None (explicit)."""
    if isinstance(w1, int) and isinstance(w2, int):
        return min(w1, w2)
    if w1 is None and w2 is None:
        return None
    if isinstance(w1, int):
        return w1
    if isinstance(w2, int):
        return w2
    return None


def restrict_module(ext: Extension, module: ModuleStructure,
                    window_m=None, window_a=None) -> ModuleStructure:
    """Pull a target-algebra module back to the source along the extension."""
    if module.algebra is not ext.target:
        raise InputError("restrict_module: module is not over the extension target")
    wm = window_m
    wa = ext.target_window if window_a is None else window_a

    def rule(m_id, b_id):
        m = module.space.basis_element(m_id)
        return act_on_module(module, m, ext.basis_multiplier(b_id),
                             window_m=wm, window_a=wa).coeffs

    return ModuleStructure(module.space, ext.source, module.side, rule,
                           name=f"{module.name} along {ext.name}")
