"""The module category of a quasi-Hopf algebra.

Representations are given by one action matrix per algebra basis element;
tensor products act through the coproduct, duals through the antipode, and
the associator is the coassociator acting legwise.  With pivotal data the
right duality and the double-dual identification are available, and partial
traces are built literally as the composites

    tr_r(f): A -> A.1 -> A(C Cd) -> (A C)Cd -> (B C)Cd -> B(C Cd) -> B.1 -> B
    tr_l(g): A -> 1.A -> (Cd C)A -> Cd(C A) -> Cd(C B) -> (Cd C)B -> 1.B -> B

with every coherence map realized explicitly (unit constraints are identity
on underlying coordinates; associators are coassociator matrices).

Module maps are sparse matrices tagged with source and target; every
constructor here yields maps that pass the intertwiner check, and Hom-spaces
are computed as exact nullspaces of the intertwining constraints.
"""

from quasihopf.exactmath import RowReducer, Scalar, SparseMatrix
from quasihopf.qha import MissingPivotalData


class ShapeMismatch(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


class Representation:
    """Base: a finite-dimensional module with per-basis action columns."""

    def __init__(self, H, dim):
        self.H = H
        self.dim = dim
        self._matrices = {}
        self._columns = {}

    def matrix(self, i):
        m = self._matrices.get(i)
        if m is None:
            m = self._build_matrix(i)
            self._matrices[i] = m
        return m

    def column(self, i, j):
        """rho(e_i) e_j as a sparse dict."""
        key = (i, j)
        col = self._columns.get(key)
        if col is None:
            col = self.matrix(i).apply({j: Scalar.one(self.H.n)})
            self._columns[key] = col
        return col

    def act_basis(self, i, vec):
        return self.matrix(i).apply(vec)

    def act_elem(self, x, vec):
        out = {}
        for (i,), c in x.coeffs.items():
            for k, v in self.act_basis(i, vec).items():
                cur = out.get(k)
                s = c * v if cur is None else cur + c * v
                out[k] = s
        return {k: v for k, v in out.items() if v}

    def matrix_of_elem(self, x):
        m = SparseMatrix(self.H.n, self.dim, self.dim)
        for (i,), c in x.coeffs.items():
            for (r, s), v in self.matrix(i).entries.items():
                m.add_to(r, s, c * v)
        return m

    def check_is_module(self):
        """rho is a unital algebra morphism (exhaustive over basis pairs)."""
        A = self.H.alg
        if self.matrix_of_elem(A.unit) != SparseMatrix.identity(self.H.n, self.dim):
            return False
        for i in range(self.H.dim):
            for j in range(self.H.dim):
                prod = A.mul(A.basis(i), A.basis(j))
                if self.matrix(i) @ self.matrix(j) != self.matrix_of_elem(prod):
                    return False
        return True


class RegularRep(Representation):
    """H acting on itself by left multiplication."""

    def __init__(self, H):
        super().__init__(H, H.dim)

    def _build_matrix(self, i):
        A = self.H.alg
        m = SparseMatrix(self.H.n, self.dim, self.dim)
        for a in range(self.dim):
            cell = A.table.get((i, a))
            if cell:
                for k, c in cell.items():
                    m.add_to(k, a, c)
        return m


class TrivialRep(Representation):
    """h . v = eps(h) v on a space of the given dimension."""

    def _build_matrix(self, i):
        e = self.H.eps(self.H.basis(i))
        m = SparseMatrix(self.H.n, self.dim, self.dim)
        if e:
            for j in range(self.dim):
                m.set(j, j, e)
        return m


class MatrixRep(Representation):
    def __init__(self, H, matrices):
        super().__init__(H, matrices[0].rows if matrices else 0)
        self._matrices = dict(enumerate(matrices))

    def _build_matrix(self, i):
        raise KeyError(i)


class TensorRep(Representation):
    """V (x) W with action through the coproduct; index = v * dim(W) + w."""

    def __init__(self, left, right):
        if left.H is not right.H:
            raise AlgebraMismatch("tensor factors over different algebras")
        super().__init__(left.H, left.dim * right.dim)
        self.left = left
        self.right = right

    def _build_matrix(self, i):
        H = self.H
        dw = self.right.dim
        m = SparseMatrix(H.n, self.dim, self.dim)
        for (x, y), c in H.delta_images[i].coeffs.items():
            mx, my = self.left.matrix(x), self.right.matrix(y)
            for (r1, c1), v1 in mx.entries.items():
                for (r2, c2), v2 in my.entries.items():
                    m.add_to(r1 * dw + r2, c1 * dw + c2, c * v1 * v2)
        return m

    def act_basis(self, i, vec):
        H = self.H
        dw = self.right.dim
        out = {}
        for (x, y), c in H.delta_images[i].coeffs.items():
            for key, val in vec.items():
                l, r = divmod(key, dw)
                cv = c * val
                for l2, a in self.left.column(x, l).items():
                    for r2, b in self.right.column(y, r).items():
                        k2 = l2 * dw + r2
                        cur = out.get(k2)
                        s = cv * a * b if cur is None else cur + cv * a * b
                        out[k2] = s
        return {k: v for k, v in out.items() if v}


class DualRep(Representation):
    """Left dual: <h.p, v> = <p, S(h) v>, so the action is rho(S(h)) transposed."""

    def __init__(self, base):
        super().__init__(base.H, base.dim)
        self.base = base

    def _build_matrix(self, i):
        s_img = self.H.antipode_images[i]
        return self.base.matrix_of_elem(s_img).transpose()


class ModuleMap:
    """H-linear map between representations, stored as a sparse matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ShapeMismatch(
                f"matrix {matrix.rows}x{matrix.cols} between modules of "
                f"dimensions {source.dim} -> {target.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, rep):
        return cls(rep, rep, SparseMatrix.identity(rep.H.n, rep.dim))

    def __matmul__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        if other.target.dim != self.source.dim:
            raise ShapeMismatch("composition dimension mismatch")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def scale(self, scalar):
        return ModuleMap(self.source, self.target, self.matrix.scale(scalar))

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.matrix == other.matrix and \
            (self.source.dim, self.target.dim) == (other.source.dim, other.target.dim)

    def apply(self, vec):
        return self.matrix.apply(vec)

    def is_intertwiner(self, basis_indices=None, columns=None):
        """Exact check of matrix . rho_src(h) = rho_tgt(h) . matrix.

        Exhaustive over all basis elements and source columns by default;
        pass explicit index lists to restrict (used at large dimensions).
        """
        H = self.source.H
        basis_indices = range(H.dim) if basis_indices is None else basis_indices
        columns = range(self.source.dim) if columns is None else columns
        for i in basis_indices:
            for c in columns:
                via_src = self.apply(self.source.column(i, c))
                via_tgt = self.target.act_basis(i, self.apply({c: Scalar.one(H.n)}))
                if via_src != via_tgt:
                    return False
        return True

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim}, " \
               f"nnz={self.matrix.nnz()})"


def regular_module(H):
    return RegularRep(H)


def trivial_module(H, dim=1):
    return TrivialRep(H, dim)


def tensor(V, W):
    return TensorRep(V, W)


def unit_object(H):
    return TrivialRep(H, 1)


def unit_intro_right(V):
    """V -> V (x) 1, identity on underlying coordinates."""
    t = TensorRep(V, unit_object(V.H))
    return ModuleMap(V, t, SparseMatrix.identity(V.H.n, V.dim))


def unit_elim_right(V):
    t = TensorRep(V, unit_object(V.H))
    return ModuleMap(t, V, SparseMatrix.identity(V.H.n, V.dim))


def unit_intro_left(V):
    t = TensorRep(unit_object(V.H), V)
    return ModuleMap(V, t, SparseMatrix.identity(V.H.n, V.dim))


def unit_elim_left(V):
    t = TensorRep(unit_object(V.H), V)
    return ModuleMap(t, V, SparseMatrix.identity(V.H.n, V.dim))


def _triple_action_matrix(H, tensor3, U, V, W):
    dims = (U.dim, V.dim, W.dim)
    total = dims[0] * dims[1] * dims[2]
    m = SparseMatrix(H.n, total, total)
    for (x, y, z), c in tensor3.coeffs.items():
        mu, mv, mw = U.matrix(x), V.matrix(y), W.matrix(z)
        for (r1, c1), v1 in mu.entries.items():
            for (r2, c2), v2 in mv.entries.items():
                v12 = v1 * v2
                for (r3, c3), v3 in mw.entries.items():
                    m.add_to((r1 * dims[1] + r2) * dims[2] + r3,
                             (c1 * dims[1] + c2) * dims[2] + c3,
                             c * v12 * v3)
    return m


def associator(U, V, W):
    """U (x) (V (x) W) -> (U (x) V) (x) W, acting by the coassociator."""
    H = U.H
    src = TensorRep(U, TensorRep(V, W))
    tgt = TensorRep(TensorRep(U, V), W)
    return ModuleMap(src, tgt, _triple_action_matrix(H, H.coassociator, U, V, W))


def associator_inv(U, V, W):
    """(U (x) V) (x) W -> U (x) (V (x) W), acting by the inverse coassociator."""
    H = U.H
    src = TensorRep(TensorRep(U, V), W)
    tgt = TensorRep(U, TensorRep(V, W))
    return ModuleMap(src, tgt, _triple_action_matrix(H, H.coassociator_inv, U, V, W))


class DualityData:
    """Left/right duality and the double-dual map for one module."""

    def __init__(self, V):
        H = V.H
        n = H.n
        d = V.dim
        self.module = V
        self.dual = DualRep(V)
        unit = unit_object(H)

        alpha_m = V.matrix_of_elem(H.alpha)
        ev = SparseMatrix(n, 1, d * d)
        for (j, k), c in alpha_m.entries.items():
            ev.set(0, j * d + k, c)
        self.ev_left = ModuleMap(TensorRep(self.dual, V), unit, ev)

        beta_m = V.matrix_of_elem(H.beta)
        coev = SparseMatrix(n, d * d, 1)
        for (k, i), c in beta_m.entries.items():
            coev.set(k * d + i, 0, c)
        self.coev_left = ModuleMap(unit, TensorRep(V, self.dual), coev)

        self.ev_right = None
        self.coev_right = None
        self.double_dual = None
        if H.pivotal is not None:
            p = H.pivotal
            sag = H.alg.mul(H.S(H.alpha), p.pivot)
            m = V.matrix_of_elem(sag)
            ev = SparseMatrix(n, 1, d * d)
            for (j, k), c in m.entries.items():
                ev.set(0, k * d + j, c)
            self.ev_right = ModuleMap(TensorRep(V, self.dual), unit, ev)

            sb = V.matrix_of_elem(H.S(H.beta))
            gi = V.matrix_of_elem(p.pivot_inv)
            coev = SparseMatrix(n, d * d, 1)
            for (i, j), c in sb.entries.items():
                for (k, i2), e in gi.entries.items():
                    if i2 == i:
                        coev.add_to(j * d + k, 0, c * e)
            self.coev_right = ModuleMap(unit, TensorRep(self.dual, V), coev)

            self.double_dual = ModuleMap(
                V, DualRep(self.dual), V.matrix_of_elem(p.pivot))


def duals_and_pivot(V):
    data = DualityData(V)
    if V.H.pivotal is None:
        raise MissingPivotalData("right duality needs pivotal data")
    return data


def dual_map(f, dual_source=None, dual_target=None):
    """The transpose of f, as a map between the dual modules."""
    ds = DualRep(f.source) if dual_source is None else dual_source
    dt = DualRep(f.target) if dual_target is None else dual_target
    return ModuleMap(dt, ds, f.matrix.transpose())


def partial_trace(f, side="right"):
    """Categorical partial trace over the second (right) or first (left)
    tensor factor of an endomorphism-shaped map."""
    if not isinstance(f.source, TensorRep) or not isinstance(f.target, TensorRep):
        raise ShapeMismatch("partial trace needs maps between tensor products")
    if side == "right":
        A, C = f.source.left, f.source.right
        B = f.target.left
        if f.target.right is not C:
            raise ShapeMismatch("right leg must be shared between source and target")
        d = DualityData(C)
        if d.ev_right is None:
            raise MissingPivotalData("right partial trace needs pivotal data")
        idA = ModuleMap.identity(A)
        idB = ModuleMap.identity(B)
        id_dual = ModuleMap.identity(d.dual)
        pre = associator(A, C, d.dual) @ _tensor_map(idA, d.coev_left) \
            @ unit_intro_right(A)
        post = unit_elim_right(B) @ _tensor_map(idB, d.ev_right) \
            @ associator_inv(B, C, d.dual)
        return post @ _tensor_map(f, id_dual) @ pre
    if side == "left":
        C, A = f.source.left, f.source.right
        B = f.target.right
        if f.target.left is not C:
            raise ShapeMismatch("left leg must be shared between source and target")
        d = DualityData(C)
        if d.coev_right is None:
            raise MissingPivotalData("left partial trace needs pivotal data")
        idA = ModuleMap.identity(A)
        idB = ModuleMap.identity(B)
        id_dual = ModuleMap.identity(d.dual)
        pre = associator_inv(d.dual, C, A) @ _tensor_map(d.coev_right, idA) \
            @ unit_intro_left(A)
        post = unit_elim_left(B) @ _tensor_map(d.ev_left, idB) \
            @ associator(d.dual, C, B)
        return post @ _tensor_map(id_dual, f) @ pre
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def _tensor_map(f, g):
    n = f.source.H.n
    s2, t2 = g.source.dim, g.target.dim
    m = SparseMatrix(n, f.target.dim * t2, f.source.dim * s2)
    for (i1, j1), a in f.matrix.entries.items():
        for (i2, j2), b in g.matrix.entries.items():
            m.set(i1 * t2 + i2, j1 * s2 + j2, a * b)
    return ModuleMap(TensorRep(f.source, g.source),
                     TensorRep(f.target, g.target), m)


tensor_map = _tensor_map


def phi_psi(H, V):
    """The exact mutually inverse module isomorphisms between H (x) V with
    the diagonal action and H (x) V with the trivialized right leg:

        phi_r(h (x) v) = (Delta(h) p_r) . (1 (x) v)
        psi_r(h (x) v) = [(id (x) S)(q_r Delta(h))] . (1 (x) v)

    and their left-handed analogues (with p_l, q_l, S^-1, legs swapped).
    The second legs act through the module structure of V.
    """
    A = H.alg
    ce = H.canonical_elements()
    reg = RegularRep(H)
    triv = TrivialRep(H, V.dim)
    dv = V.dim

    def build(source, target, columns):
        m = SparseMatrix(H.n, target.dim, source.dim)
        for col, entries in columns:
            for k, c in entries.items():
                m.add_to(k, col, c)
        return ModuleMap(source, target, m)

    def cols_right(mid_of_h, act_img):
        for h in range(H.dim):
            mid = mid_of_h(h)
            for v in range(dv):
                entries = {}
                for (x, y), c in mid.coeffs.items():
                    for r, cv in _elem_column(V, act_img(y), v).items():
                        k = x * dv + r
                        cur = entries.get(k)
                        s = c * cv if cur is None else cur + c * cv
                        entries[k] = s
                yield h * dv + v, {k: v2 for k, v2 in entries.items() if v2}

    phi_r = build(TensorRep(reg, triv), TensorRep(reg, V), cols_right(
        lambda h: A.mul(H.delta(A.basis(h)), ce.p_r), lambda y: A.basis(y)))
    psi_r = build(TensorRep(reg, V), TensorRep(reg, triv), cols_right(
        lambda h: A.mul(ce.q_r, H.delta(A.basis(h))),
        lambda y: H.S(A.basis(y))))

    def cols_left(mid_of_h, act_img):
        for v in range(dv):
            for h in range(H.dim):
                mid = mid_of_h(h)
                entries = {}
                for (x, y), c in mid.coeffs.items():
                    for r, cv in _elem_column(V, act_img(x), v).items():
                        k = r * H.dim + y
                        cur = entries.get(k)
                        s = c * cv if cur is None else cur + c * cv
                        entries[k] = s
                yield v * H.dim + h, {k: v2 for k, v2 in entries.items() if v2}

    phi_l = build(TensorRep(triv, reg), TensorRep(V, reg), cols_left(
        lambda h: A.mul(H.delta(A.basis(h)), ce.p_l), lambda x: A.basis(x)))
    psi_l = build(TensorRep(V, reg), TensorRep(triv, reg), cols_left(
        lambda h: A.mul(ce.q_l, H.delta(A.basis(h))),
        lambda x: H.S_inv(A.basis(x))))
    return phi_r, psi_r, phi_l, psi_l


def _elem_column(V, x, j):
    """(rho_V of the element x) applied to basis vector j."""
    out = {}
    for (i,), c in x.coeffs.items():
        for k, v in V.column(i, j).items():
            cur = out.get(k)
            s = c * v if cur is None else cur + c * v
            out[k] = s
    return {k: v for k, v in out.items() if v}


def xi(H, W, a, m, maps=None):
    """Xi(a (x) m) = phi_r . (r_a (x) m) . psi_r in End(H (x) W).

    a is an algebra element, m a SparseMatrix on W; Xi is an algebra
    isomorphism from (opposite multiplication) (x) End(W) onto the
    H-linear endomorphisms of H (x) W.
    """
    phi_r, psi_r, _, _ = maps if maps is not None else phi_psi(H, W)
    mid = ModuleMap(psi_r.target, phi_r.source,
                    _kron(H.n, H.alg.right_mult_matrix(a), m))
    return phi_r @ mid @ psi_r


def xi_left(H, W, a, m, maps=None):
    """The left-handed analogue phi_l . (m (x) r_a) . psi_l in End(W (x) H)."""
    _, _, phi_l, psi_l = maps if maps is not None else phi_psi(H, W)
    mid = ModuleMap(psi_l.target, phi_l.source,
                    _kron(H.n, m, H.alg.right_mult_matrix(a)))
    return phi_l @ mid @ psi_l


def _kron(n, a, b):
    m = SparseMatrix(n, a.rows * b.rows, a.cols * b.cols)
    for (i1, j1), x in a.entries.items():
        for (i2, j2), y in b.entries.items():
            m.set(i1 * b.rows + i2, j1 * b.cols + j2, x * y)
    return m


def hom_space(M, P):
    """Basis of Hom_H(M, P), as exact nullspace of the intertwiner constraints."""
    H = M.H
    if P.H is not H:
        raise AlgebraMismatch("modules over different algebras")
    dm, dp = M.dim, P.dim
    red = RowReducer(H.n, dp * dm)
    for h in range(H.dim):
        mp = P.matrix(h)
        mm = M.matrix(h)
        rows = {}
        for (p2, p), v in mp.entries.items():
            for col_m in range(dm):
                row = rows.setdefault((p2, col_m), {})
                key = p * dm + col_m
                cur = row.get(key)
                row[key] = v if cur is None else cur + v
        for (m2, m1), v in mm.entries.items():
            for p2 in range(dp):
                row = rows.setdefault((p2, m1), {})
                key = p2 * dm + m2
                cur = row.get(key)
                row[key] = -v if cur is None else cur - v
        for row in rows.values():
            row = {k: c for k, c in row.items() if c}
            if row:
                red.add_row(row)
    out = []
    for vec in red.nullspace():
        m = SparseMatrix(H.n, dp, dm)
        for idx, c in enumerate(vec):
            if c:
                m.set(idx // dm, idx % dm, c)
        out.append(ModuleMap(M, P, m))
    return out
