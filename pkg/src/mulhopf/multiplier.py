"""Multipliers of a non-unital algebra.

A multiplier is a pair of linear maps (lam, rho) on A with

    lam(a*b) = lam(a)*b,   rho(a*b) = a*rho(b),   a*lam(b) = rho(a)*b,

thought of as one two-sided object x acting by x |> a = lam(a) and
a <| x = rho(a).  Products compose contravariantly on the right action:
(x*y) |> a = x |> (y |> a), a <| (x*y) = (a <| x) <| y.  The algebra
embeds by iota(a) = (left mult by a, right mult by a), and the unit
multiplier is (id, id) whether or not A itself has a unit.

For finite A the whole multiplier algebra is computed exactly as the
solution space of the linearity + compatibility system
(``MultiplierSpace``); for oracle algebras everything stays operational
and window-relative.
"""

from __future__ import annotations

from .linalg import GaussianSolver, SparseMatrix, vec_canonical
from .algebra import (
    Algebra, Element, InputError, InvariantViolation, ModuleStructure, Verdict,
    WindowInsufficiency, resolve_window,
)


class Multiplier:
    __slots__ = ("alg", "_lam", "_rho", "_lam_cache", "_rho_cache", "_prod", "name")

    def __init__(self, alg: Algebra, lam, rho, name=None):
        self.alg = alg
        self._lam = lam
        self._rho = rho
        self._lam_cache: dict = {}
        self._rho_cache: dict = {}
        self._prod = None
        self.name = name

    # -- basis-level actions, memoized (rules are pure) ---------------------

    def lam_basis(self, bid) -> Element:
        out = self._lam_cache.get(bid)
        if out is None:
            out = self._lam_cache[bid] = _as_element(self.alg, self._lam(bid))
        return out

    def rho_basis(self, bid) -> Element:
        out = self._rho_cache.get(bid)
        if out is None:
            out = self._rho_cache[bid] = _as_element(self.alg, self._rho(bid))
        return out

    # -- linear extensions --------------------------------------------------

    def apply_left(self, a: Element) -> Element:
        """x |> a."""
        if self._prod is not None:
            x, y = self._prod
            return x.apply_left(y.apply_left(a))
        return _extend(self.alg, self.lam_basis, a)

    def apply_right(self, a: Element) -> Element:
        """a <| x."""
        if self._prod is not None:
            x, y = self._prod
            return y.apply_right(x.apply_right(a))
        return _extend(self.alg, self.rho_basis, a)

    # -- algebra structure of M(A) ------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, Multiplier):
            return self.scale(other)
        if other.alg is not self.alg:
            raise InputError("multipliers over different algebras")
        x, y = self, other
        out = Multiplier(
            self.alg,
            lambda bid: x.apply_left(y.lam_basis(bid)),
            lambda bid: y.apply_right(x.rho_basis(bid)),
        )
        # applying a product to a whole element goes factor by factor, which
        # keeps the intermediate support materialized once instead of per id
        out._prod = (x, y)
        return out

    def __add__(self, other):
        if other.alg is not self.alg:
            raise InputError("multipliers over different algebras")
        x, y = self, other
        return Multiplier(
            self.alg,
            lambda bid: x.lam_basis(bid) + y.lam_basis(bid),
            lambda bid: x.rho_basis(bid) + y.rho_basis(bid),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        x = self
        return Multiplier(self.alg, lambda bid: -x.lam_basis(bid),
                          lambda bid: -x.rho_basis(bid))

    def scale(self, scalar):
        x = self
        s = self.alg.field.coerce(scalar)
        return Multiplier(self.alg, lambda bid: x.lam_basis(bid).scale(s),
                          lambda bid: x.rho_basis(bid).scale(s))

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __repr__(self):
        return f"<multiplier {self.name or '?'} on {self.alg.name}>"


def _as_element(alg, value) -> Element:
    if isinstance(value, Element):
        if value.space is not alg:
            raise InputError("multiplier rule returned a foreign element")
        return value
    return Element(alg, vec_canonical(alg.field, value))


def _extend(alg, basis_fn, a: Element) -> Element:
    field = alg.field
    acc: dict = {}
    for bid, c in a.coeffs.items():
        for out, v in basis_fn(bid).coeffs.items():
            s = field.add(acc.get(out, field.zero), field.mul(c, v))
            if s:
                acc[out] = s
            else:
                acc.pop(out, None)
    return Element(alg, acc)


def one(alg: Algebra) -> Multiplier:
    """The unit multiplier (id, id)."""
    return Multiplier(alg, alg.basis_element, alg.basis_element, name="1")


def iota(alg: Algebra, a: Element) -> Multiplier:
    """Embed a in M(A) as (left multiplication, right multiplication)."""
    if a.space is not alg:
        raise InputError("iota wants an element of the algebra itself")
    return Multiplier(alg, lambda bid: a * alg.basis_element(bid),
                      lambda bid: alg.basis_element(bid) * a,
                      name=f"iota({a})")


def multiplier_violation(alg, lam_fn, rho_fn, pairs):
    """First violated invariant on the given id pairs, or None.

    Checks, for each pair (i, j):  lam(ei*ej) = lam(ei)*ej,
    rho(ei*ej) = ei*rho(ej), and ei*lam(ej) = rho(ei)*ej.
    """
    for i, j in pairs:
        ei, ej = alg.basis_element(i), alg.basis_element(j)
        prod = alg.mul_basis(i, j)
        lhs, rhs = _extend(alg, lam_fn, prod), lam_fn(i) * ej
        if lhs != rhs:
            return ("lam not right-linear", ei, ej, lhs, rhs)
        lhs, rhs = _extend(alg, rho_fn, prod), ei * rho_fn(j)
        if lhs != rhs:
            return ("rho not left-linear", ei, ej, lhs, rhs)
        lhs, rhs = ei * lam_fn(j), rho_fn(i) * ej
        if lhs != rhs:
            return ("compatibility", ei, ej, lhs, rhs)
    return None


def make_multiplier(alg: Algebra, lam, rho, window=None, pairs=None, name=None) -> Multiplier:
    """Validated constructor; rejects with the witness pair on violation."""
    cand = Multiplier(alg, lam, rho, name=name)
    if pairs is None:
        ids = resolve_window(alg, window)
        pairs = [(i, j) for i in ids for j in ids]
        label = alg.window_label(ids)
    else:
        pairs = list(pairs)
        label = f"{len(pairs)} pairs"
    bad = multiplier_violation(alg, cand.lam_basis, cand.rho_basis, pairs)
    if bad is not None:
        tag, ei, ej, lhs, rhs = bad
        raise InvariantViolation(Verdict(
            "multiplier invariants", "failed", label, witness=(ei, ej),
            detail=f"{tag}: {lhs} vs {rhs}"))
    return cand


def multiplier_eq(x: Multiplier, y: Multiplier, probes, strict=None) -> Verdict:
    """Compare both actions on probe elements; first mismatch is the witness.

    ``strict`` overrides the ok-status; by default it is "proven" exactly
    when the algebra is finite and the probes span it.
    """
    if x.alg is not y.alg:
        raise InputError("multipliers over different algebras")
    alg = x.alg
    probes = [alg.basis_element(p) if not isinstance(p, Element) else p for p in probes]
    label = f"{len(probes)} probes"
    for p in probes:
        if x.apply_left(p) != y.apply_left(p):
            return Verdict("multiplier equality", "failed", label, witness=(p,),
                           detail=f"x|>p = {x.apply_left(p)} but y|>p = {y.apply_left(p)}")
        if x.apply_right(p) != y.apply_right(p):
            return Verdict("multiplier equality", "failed", label, witness=(p,),
                           detail=f"p<|x = {x.apply_right(p)} but p<|y = {y.apply_right(p)}")
    if strict is None:
        strict = "holds_on_window"
        if alg.finite:
            cols = [(k, p.coeffs) for k, p in enumerate(probes)]
            solver = GaussianSolver(SparseMatrix.from_columns(alg.field, cols))
            if solver.rank == len(alg.basis.ids):
                strict = "proven"
    return Verdict("multiplier equality", strict, label)


def act_on_module(module: ModuleStructure, m: Element, x: Multiplier,
                  window_m=None, window_a=None, verify=False) -> Element:
    """Extend the action along M = MA:  m <| x = sum m_i * (a_i <| x).

    Needs a decomposition of m over the windows; raises WindowInsufficiency
    when none exists.  With ``verify`` a second decomposition (when the
    solve is underdetermined) must give the same answer.
    """
    if module.algebra is not x.alg:
        raise InputError("multiplier belongs to a different algebra")
    m_ids = resolve_window(module.space, window_m)
    a_ids = resolve_window(module.algebra, window_a)
    dec = module.decompose(m, m_ids, a_ids)
    if dec is None:
        raise WindowInsufficiency(
            f"{m} does not decompose over {module.space.window_label(m_ids)}")
    out = _act_via(module, dec, x)
    if verify:
        span = module.action_span(m_ids, a_ids)
        kernel = span.kernel_basis()
        if kernel:
            alt = dict(span.solve(m.coeffs))
            f = module.space.field
            for k, v in kernel[0].items():
                s = f.add(alt.get(k, f.zero), v)
                if s:
                    alt[k] = s
                else:
                    alt.pop(k, None)
            dec2 = [(c, mi, aj) for (mi, aj), c in alt.items()]
            if _act_via(module, dec2, x) != out:
                raise InvariantViolation(Verdict(
                    "action well-defined", "failed",
                    module.space.window_label(m_ids), witness=(m,),
                    detail="two decompositions disagree under the multiplier"))
    return out


def _act_via(module, dec, x) -> Element:
    out = module.space.zero()
    for c, mi, aj in dec:
        a = module.algebra.basis_element(aj)
        moved = x.apply_right(a) if module.side == "right" else x.apply_left(a)
        out = out + module.act(module.space.basis_element(mi), moved).scale(c)
    return out


# ---------------------------------------------------------------------------
# exact coordinates of M(A) for finite A


class MultiplierSpace:
    """All of M(A) for finite A, as the kernel of the constraint system.

    Coordinates are the entries of the lam and rho action matrices; keys
    ("L", i, j) / ("R", i, j) mean the coefficient of e_i in lam(e_j),
    rho(e_j).  The basis multipliers come out of ``kernel_basis`` in
    deterministic column order.
    """

    def __init__(self, alg: Algebra):
        if not alg.finite:
            raise InputError("MultiplierSpace needs a finite algebra")
        self.alg = alg
        ids = alg.basis.ids
        field = alg.field
        cols = []
        for tag in ("L", "R"):
            for i in ids:
                for j in ids:
                    cols.append((tag, i, j))
        entries: dict = {}

        def put(row, col, val):
            if val:
                prev = entries.get((row, col), field.zero)
                s = field.add(prev, val)
                if s:
                    entries[(row, col)] = s
                else:
                    entries.pop((row, col), None)

        rows = []
        for j in ids:
            for k in ids:
                prod = alg.mul_basis(j, k)
                for r in ids:
                    row = ("lam-lin", j, k, r)
                    rows.append(row)
                    for t, c in prod.coeffs.items():
                        put(row, ("L", r, t), c)
                    for i in ids:
                        put(row, ("L", i, j), field.neg(alg.mul_basis(i, k).coeffs.get(r, field.zero)))
                    row = ("rho-lin", j, k, r)
                    rows.append(row)
                    for t, c in prod.coeffs.items():
                        put(row, ("R", r, t), c)
                    for i in ids:
                        put(row, ("R", i, k), field.neg(alg.mul_basis(j, i).coeffs.get(r, field.zero)))
        for i in ids:
            for j in ids:
                for r in ids:
                    row = ("compat", i, j, r)
                    rows.append(row)
                    for u in ids:
                        put(row, ("L", u, j), alg.mul_basis(i, u).coeffs.get(r, field.zero))
                        put(row, ("R", u, i), field.neg(alg.mul_basis(u, j).coeffs.get(r, field.zero)))
        matrix = SparseMatrix(field, rows, cols, entries)
        self._kernel = GaussianSolver(matrix).kernel_basis()
        self._coord_solver = GaussianSolver(SparseMatrix.from_columns(
            field, [(k, v) for k, v in enumerate(self._kernel)], rows=cols))
        self.basis = [self._from_tables(vec) for vec in self._kernel]

    @property
    def dim(self):
        return len(self.basis)

    def _from_tables(self, vec) -> Multiplier:
        alg = self.alg
        lam_table: dict = {}
        rho_table: dict = {}
        for (tag, i, j), v in vec.items():
            (lam_table if tag == "L" else rho_table).setdefault(j, {})[i] = v
        return Multiplier(alg,
                          lambda bid, t=lam_table: t.get(bid, {}),
                          lambda bid, t=rho_table: t.get(bid, {}))

    def table_vector(self, x: Multiplier) -> dict:
        vec: dict = {}
        for j in self.alg.basis.ids:
            for i, v in x.lam_basis(j).coeffs.items():
                vec[("L", i, j)] = v
            for i, v in x.rho_basis(j).coeffs.items():
                vec[("R", i, j)] = v
        return vec

    def coords_of(self, x: Multiplier):
        """Coordinates of x in the computed basis, or None if outside."""
        sol = self._coord_solver.solve(self.table_vector(x))
        if sol is None:
            return None
        return [sol.get(k, self.alg.field.zero) for k in range(self.dim)]

    def iota_rank(self) -> int:
        cols = [(bid, self.table_vector(iota(self.alg, self.alg.basis_element(bid))))
                for bid in self.alg.basis.ids]
        return GaussianSolver(SparseMatrix.from_columns(self.alg.field, cols)).rank


# ---------------------------------------------------------------------------
# preimages under iota


def _finite_iota_solver(alg: Algebra) -> GaussianSolver:
    solver = getattr(alg, "_iota_solver", None)
    if solver is None:
        ids = alg.basis.ids
        cols = []
        for t in ids:
            col: dict = {}
            et = alg.basis_element(t)
            for w in ids:
                for r, v in (et * alg.basis_element(w)).coeffs.items():
                    col[("L", w, r)] = v
                for r, v in (alg.basis_element(w) * et).coeffs.items():
                    col[("R", w, r)] = v
            cols.append((t, col))
        solver = alg._iota_solver = GaussianSolver(
            SparseMatrix.from_columns(alg.field, cols))
    return solver


def iota_preimage(alg: Algebra, z: Multiplier, window=None, probe_ids=None):
    """Element u with iota(u) = z, or None.

    Finite algebras: exact linear solve over the full basis (a None is a
    proof that z is outside iota(A)).  Oracle algebras: contract z against
    the certified local unit of the search window from both sides; the two
    candidates must agree, and with ``probe_ids`` the candidate is further
    verified against every probe.  Oracle results are window-relative.
    """
    if alg.finite:
        rhs: dict = {}
        for w in alg.basis.ids:
            ew = alg.basis_element(w)
            for r, v in z.apply_left(ew).coeffs.items():
                rhs[("L", w, r)] = v
            for r, v in z.apply_right(ew).coeffs.items():
                rhs[("R", w, r)] = v
        sol = _finite_iota_solver(alg).solve(rhs)
        if sol is None:
            return None
        return Element(alg, vec_canonical(alg.field, sol))
    ids = resolve_window(alg, window)
    e = alg.local_unit(ids)
    if e is None:
        raise WindowInsufficiency(
            f"{alg.name} has no local-unit certificate; cannot invert iota on a window")
    u_left = z.apply_left(e)
    u_right = z.apply_right(e)
    if u_left != u_right:
        return None
    if probe_ids is not None:
        u = u_left
        for w in probe_ids:
            ew = alg.basis_element(w)
            if u * ew != z.apply_left(ew) or ew * u != z.apply_right(ew):
                return None
    return u_left
