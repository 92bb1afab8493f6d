"""Integrals, the modulus, cointegrals, and symmetrised cointegrals.

A left integral is an element L with h L = eps(h) L for all h; the solution
space is found as the exact nullspace of the stacked operators
(l_h - eps(h) id) over all basis h, assembled as one sparse system and
eliminated in one pass.  The modulus gamma is read off from L h = gamma(h) L
and verified to be an algebra morphism; gamma = eps characterises the
unimodular case.

A left cointegral is a form lam with

    (id (x) lam)(V Delta(h) U) = gamma(Phi_1) lam(h S(Phi_2)) Phi_3

for all h, where U = f^-1 (S (x) S)(q_r flipped) and
V = (S^-1 (x) S^-1)(f_21 p_r_21).  A right cointegral is a left cointegral
for the coopposite algebra.  Both are solved as one stacked sparse linear
system in the dim(H) dual coefficients; the solution space must come out
exactly one-dimensional.

The symmetrised cointegrals are the shifts

    sym right = lam <- (u g),    sym left = lam <- (u_cop g^-1),

verified against their intrinsic characterisation

    (sym_r (x) id)(q_r Delta(h) p_r) = gamma(Phi_1) sym_r(Phi_2 h) g^-1 S(Phi_3)
    (id (x) sym_l)(q_l Delta(h) p_l) = gamma(Psi_3) sym_l(Psi_2 h) g S^-1(Psi_1)

for every basis h, which in the unimodular case collapse to

    sym_r(h) 1 = (sym_r (x) g)(q_r Delta(h) p_r)
    sym_l(h) 1 = (g^-1 (x) sym_l)(q_l Delta(h) p_l).
"""

from dataclasses import dataclass

from quasihopf.algcore import LinearForm, TensorElement
from quasihopf.exactmath import RowReducer, Scalar
from quasihopf.qha import derive_UVu
from quasihopf.report import Check


class DimensionZero(ValueError):
    pass


class WrongSolutionDim(ValueError):
    pass


class InconsistentModulus(ValueError):
    pass


class VerificationFailed(ValueError):
    pass


@dataclass
class IntegralSpace:
    side: str                    # 'left' or 'right'
    basis: list                  # TensorElements spanning the space


@dataclass
class Modulus:
    form: LinearForm

    def of(self, x):
        return self.form.evaluate(x)

    def is_counit(self, H):
        return self.form == _counit_as_form(H)


@dataclass
class CointegralResult:
    side: str
    form: LinearForm             # normalized cointegral
    normalization: Scalar        # factor applied to the raw RREF solution
    symmetrised: LinearForm = None
    gram_rank: int = None


def _counit_as_form(H):
    return LinearForm(H.n, 1, dict(H.counit.coeffs))


def integrals(H, side="left"):
    """Exact basis of {L : h L = eps(h) L} (left) or {L : L h = eps(h) L}."""
    A = H.alg
    dim = H.dim
    red = RowReducer(H.n, dim)
    for h in range(dim):
        eh = H.eps(A.basis(h))
        rows = {}
        for a in range(dim):
            pair = (h, a) if side == "left" else (a, h)
            cell = A.table.get(pair, {})
            for k, c in cell.items():
                rows.setdefault(k, {})[a] = c
            if eh:
                row = rows.setdefault(a, {})
                cur = row.get(a)
                row[a] = -eh if cur is None else cur - eh
        for row in rows.values():
            red.add_row(row)
    basis = [TensorElement(H.n, 1, {(i,): c for i, c in enumerate(vec) if c})
             for vec in red.nullspace()]
    if not basis:
        raise DimensionZero(f"no nonzero {side} integral: input data is corrupt")
    return IntegralSpace(side, basis)


def modulus(H, left_integral=None):
    """gamma with L h = gamma(h) L, verified multiplicative."""
    A = H.alg
    if left_integral is None:
        left_integral = integrals(H, "left").basis[0]
    L = left_integral
    ref_key, ref_val = min(L.coeffs.items())
    coeffs = {}
    for h in range(H.dim):
        prod = A.mul(L, A.basis(h))
        val = prod.coeffs.get(ref_key)
        g = Scalar.zero(H.n) if val is None else val / ref_val
        if prod != L.scale(g):
            raise InconsistentModulus(
                f"L h is not proportional to L at h = {A.labels[h]}")
        if g:
            coeffs[(h,)] = g
    form = LinearForm(H.n, 1, coeffs)
    if not form.evaluate(A.unit).is_one():
        raise InconsistentModulus("gamma(1) != 1")
    for i in range(H.dim):
        for j in range(H.dim):
            lhs = form.evaluate(A.mul(A.basis(i), A.basis(j)))
            if lhs != form.evaluate(A.basis(i)) * form.evaluate(A.basis(j)):
                raise InconsistentModulus(
                    f"gamma not multiplicative at ({A.labels[i]}, {A.labels[j]})")
    return Modulus(form)


def _left_cointegral_rows(H, gamma):
    """Rows of the stacked left-cointegral system, one block per basis h."""
    A = H.alg
    dim = H.dim
    cap_u, cap_v, _, _ = derive_UVu(H, gamma.form)
    phi = H.coassociator
    for h in range(dim):
        rows = {}
        middle = A.mul(A.mul(cap_v, H.delta(A.basis(h))), cap_u)
        for (x, y), c in middle.coeffs.items():
            row = rows.setdefault(x, {})
            cur = row.get(y)
            row[y] = c if cur is None else cur + c
        for (p1, p2, p3), c in phi.coeffs.items():
            weight = gamma.of(A.basis(p1)) * c
            if not weight:
                continue
            hs = A.mul(A.basis(h), H.S(A.basis(p2)))
            for (w,), d in hs.coeffs.items():
                row = rows.setdefault(p3, {})
                cur = row.get(w)
                val = -weight * d
                row[w] = val if cur is None else cur + val
        for row in rows.values():
            row = {k: v for k, v in row.items() if v}
            if row:
                yield row


def cointegrals(H, side="right", pin=None):
    """Solve the cointegral system; the solution space must be 1-dimensional.

    Normalization: the first nonzero coefficient (dual-basis order) is scaled
    to match `pin` when a reference form is supplied, else to 1.
    """
    H.require_pivotal()
    Hq = H.coopposite() if side == "right" else H
    gamma = modulus(Hq)
    red = RowReducer(H.n, H.dim)
    for row in _left_cointegral_rows(Hq, gamma):
        red.add_row(row)
    basis = red.nullspace()
    if len(basis) != 1:
        raise WrongSolutionDim(
            f"{side} cointegral space has dimension {len(basis)}, expected 1")
    vec = basis[0]
    first = next(i for i, c in enumerate(vec) if c)
    scale = Scalar.one(H.n)
    if pin is not None:
        target = pin.coeffs.get((first,))
        if target:
            scale = target / vec[first]
    else:
        scale = vec[first].inverse()
    form = LinearForm(H.n, 1, {(i,): c * scale
                               for i, c in enumerate(vec) if c})
    return CointegralResult(side, form, scale)


def symmetrise(H, result):
    """Shift a cointegral by u g (right) or u_cop g^-1 (left) and verify.

    Fills result.symmetrised and returns the form; raises VerificationFailed
    with the offending basis element if the characterisation does not hold.
    """
    p = H.require_pivotal()
    A = H.alg
    gamma = modulus(H)
    _, _, u, u_cop = derive_UVu(H, gamma.form)
    if result.side == "right":
        shift = A.mul(u, p.pivot)
    else:
        shift = A.mul(u_cop, p.pivot_inv)
    sym = LinearForm(H.n, 1, {
        (a,): v for a in range(H.dim)
        if (v := result.form.evaluate(A.mul(shift, A.basis(a))))})
    rep = check_symmetrised(H, sym, gamma, result.side)
    if not rep.passed:
        bad = rep.all_failures()[0]
        raise VerificationFailed(
            f"symmetrised {result.side} cointegral fails at {bad.witness}")
    result.symmetrised = sym
    return sym


def check_symmetrised(H, sym, gamma, side):
    """The intrinsic characterisation of a symmetrised cointegral, per basis."""
    A = H.alg
    p = H.require_pivotal()
    ce = H.canonical_elements()
    report = Check(f"symmetrised-{side}-cointegral")
    if side == "right":
        sandwich = lambda dh: A.mul(A.mul(ce.q_r, dh), ce.p_r)
        phi = H.coassociator

        def rhs_of(h):
            acc = TensorElement(H.n, 1)
            for (p1, p2, p3), c in phi.coeffs.items():
                w = gamma.of(A.basis(p1)) * c * sym.evaluate(
                    A.mul(A.basis(p2), A.basis(h)))
                if w:
                    acc = acc + A.mul(p.pivot_inv, H.S(A.basis(p3))).scale(w)
            return acc

        contract_leg = 0
    else:
        sandwich = lambda dh: A.mul(A.mul(ce.q_l, dh), ce.p_l)
        psi = H.coassociator_inv

        def rhs_of(h):
            acc = TensorElement(H.n, 1)
            for (p1, p2, p3), c in psi.coeffs.items():
                w = gamma.of(A.basis(p3)) * c * sym.evaluate(
                    A.mul(A.basis(p2), A.basis(h)))
                if w:
                    acc = acc + A.mul(p.pivot, H.S_inv(A.basis(p1))).scale(w)
            return acc

        contract_leg = 1
    first_bad = None
    for h in range(H.dim):
        mid = sandwich(H.delta(A.basis(h)))
        lhs = sym.contract(mid, (contract_leg,))
        if lhs != rhs_of(h):
            first_bad = A.labels[h]
            break
    report.check("characterisation", first_bad is None, witness=first_bad)
    return report


def gram_matrix_rank(H, form):
    """Exact rank of the matrix form(e_i e_j)."""
    A = H.alg
    red = RowReducer(H.n, H.dim)
    for i in range(H.dim):
        row = {}
        for j in range(H.dim):
            cell = A.table.get((i, j))
            if not cell:
                continue
            acc = Scalar.zero(H.n)
            for k, c in cell.items():
                fv = form.coeffs.get((k,))
                if fv is not None:
                    acc = acc + c * fv
            if acc:
                row[j] = acc
        if row:
            red.add_row(row)
    return red.rank


def check_form_properties(H, form, gamma):
    """Gram rank, symmetry defect, twisted symmetry, and the antipode
    conjugation laws of cointegrals.  Failures are report entries."""
    A = H.alg
    report = Check("form-properties")
    grank = gram_matrix_rank(H, form)
    report.check("gram rank", True, value=str(grank))

    sym_defect = None
    for i in range(H.dim):
        for j in range(i + 1, H.dim):
            ab = form.evaluate(A.mul(A.basis(i), A.basis(j)))
            ba = form.evaluate(A.mul(A.basis(j), A.basis(i)))
            if ab != ba:
                sym_defect = f"({A.labels[i]}, {A.labels[j]})"
                break
        if sym_defect:
            break
    report.check("symmetric", sym_defect is None, witness=sym_defect)

    gamma_is_eps = gamma.form == _counit_as_form(H)
    report.check("gamma = eps", gamma_is_eps)
    return report


def check_twisted_symmetry(H, sym, gamma, side):
    """sym_l(ab) = sym_l((gamma -> b) a) resp. sym_r(ab) = sym_r((b <- gamma) a),
    exhaustively over basis pairs."""
    A = H.alg
    report = Check(f"twisted-symmetry-{side}")
    first_bad = None
    for i in range(H.dim):
        for j in range(H.dim):
            b = A.basis(j)
            shifted = H.hit_elem_right(gamma.form, b) if side == "left" \
                else H.hit_elem_left(b, gamma.form)
            lhs = sym.evaluate(A.mul(A.basis(i), b))
            rhs = sym.evaluate(A.mul(shifted, A.basis(i)))
            if lhs != rhs:
                first_bad = f"({A.labels[i]}, {A.labels[j]})"
                break
        if first_bad:
            break
    report.check("twisted symmetry", first_bad is None, witness=first_bad)
    return report


def check_nakayama(H, form, gamma, side):
    """Antipode conjugation law for cointegrals, exhaustively over pairs:

        left:  lam(S^-1(a) b) = lam(b S(a <- gamma))
        right: lam(S(a) b)    = lam(b S^-1(gamma -> a))
    """
    A = H.alg
    report = Check(f"nakayama-{side}")
    first_bad = None
    for i in range(H.dim):
        a = A.basis(i)
        if side == "left":
            sa = H.S_inv(a)
            shifted = H.S(H.hit_elem_left(a, gamma.form))
        else:
            sa = H.S(a)
            shifted = H.S_inv(H.hit_elem_right(gamma.form, a))
        for j in range(H.dim):
            b = A.basis(j)
            if form.evaluate(A.mul(sa, b)) != form.evaluate(A.mul(b, shifted)):
                first_bad = f"({A.labels[i]}, {A.labels[j]})"
                break
        if first_bad:
            break
    report.check("antipode conjugation", first_bad is None, witness=first_bad)
    return report


def convert_right_to_left(H, lam_r):
    """(lam_r <- u) composed with S is a left cointegral."""
    gamma = modulus(H)
    _, _, u, _ = derive_UVu(H, gamma.form)
    A = H.alg
    return LinearForm(H.n, 1, {
        (a,): v for a in range(H.dim)
        if (v := lam_r.evaluate(A.mul(u, H.S(A.basis(a)))))})


def convert_left_to_right(H, lam_l):
    """(lam_l <- u_cop) composed with S^-1 is a right cointegral."""
    gamma = modulus(H)
    _, _, _, u_cop = derive_UVu(H, gamma.form)
    A = H.alg
    return LinearForm(H.n, 1, {
        (a,): v for a in range(H.dim)
        if (v := lam_l.evaluate(A.mul(u_cop, H.S_inv(A.basis(a)))))})
