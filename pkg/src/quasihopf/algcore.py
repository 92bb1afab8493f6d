"""Finite-dimensional unital algebras given by structure constants.

Elements of tensor powers H^(x k) are sparse coefficient dicts keyed by
index tuples; linear forms on H^(x k) are sparse dual coefficient dicts.
The coproduct, counit and antipode of a quasi-Hopf algebra do not live here
(see quasihopf.qha); this module is the plain algebra layer plus the hook
actions, which take the coproduct as an explicit argument.

All containers are treated as immutable after construction; operations are
pure and deterministic (iteration over stored dicts is sorted wherever the
order is observable).
"""

from quasihopf.exactmath import Scalar, SparseMatrix


class OrderMismatch(ValueError):
    pass


class BadPermutation(ValueError):
    pass


class LegMismatch(ValueError):
    pass


class MissingCoproduct(ValueError):
    pass


class TensorElement:
    """Sparse element of H^(x order); order 0 is a scalar, order 1 an element."""

    __slots__ = ("n", "order", "coeffs")

    def __init__(self, n, order, coeffs=None):
        self.n = n
        self.order = order
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def wrap(cls, n, order, coeffs):
        """Trusting constructor: coeffs already has no zeros."""
        el = cls.__new__(cls)
        el.n = n
        el.order = order
        el.coeffs = coeffs
        return el

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.n, self.order, self.coeffs) == (other.n, other.order, other.coeffs)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            s = v if cur is None else cur + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement.wrap(self.n, self.order, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            s = -v if cur is None else cur - v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement.wrap(self.n, self.order, out)

    def __neg__(self):
        return TensorElement.wrap(self.n, self.order,
                                  {k: -v for k, v in self.coeffs.items()})

    def scale(self, scalar):
        if not scalar:
            return TensorElement(self.n, self.order)
        return TensorElement.wrap(self.n, self.order,
                                  {k: v * scalar for k, v in self.coeffs.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Scalar)):
            if isinstance(scalar, int):
                scalar = Scalar.from_int(self.n, scalar)
            return self.scale(scalar)
        return NotImplemented

    def tensor(self, other):
        if other.n != self.n:
            raise ValueError("conductor mismatch")
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                out[k1 + k2] = v1 * v2
        return TensorElement.wrap(self.n, self.order + other.order, out)

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def _check(self, other):
        if not isinstance(other, TensorElement) or other.n != self.n:
            raise ValueError("incompatible tensor elements")
        if other.order != self.order:
            raise OrderMismatch(f"order {self.order} vs {other.order}")

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in self.items_sorted())
        return f"TensorElement(order={self.order}, {{{terms}}})"


def flip(x, perm):
    """Re-index tensor legs: leg j of the result is leg perm[j] of x (1-based).

    flip(a (x) b, (2, 1)) = b (x) a, and flip(x, (3, 2, 1)) realizes the
    subscript-reversal x_321.
    """
    if sorted(perm) != list(range(1, x.order + 1)):
        raise BadPermutation(perm)
    out = {}
    for key, v in x.coeffs.items():
        out[tuple(key[p - 1] for p in perm)] = v
    return TensorElement.wrap(x.n, x.order, out)


class LinearForm:
    """Sparse element of (H^(x order))^*, coefficients on the dual basis."""

    __slots__ = ("n", "order", "coeffs")

    def __init__(self, n, order, coeffs=None):
        self.n = n
        self.order = order
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return (self.n, self.order, self.coeffs) == (other.n, other.order, other.coeffs)

    def __add__(self, other):
        if other.order != self.order:
            raise OrderMismatch(f"order {self.order} vs {other.order}")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            s = v if cur is None else cur + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LinearForm(self.n, self.order, out)

    def scale(self, scalar):
        return LinearForm(self.n, self.order,
                          {k: v * scalar for k, v in self.coeffs.items()})

    def evaluate(self, x):
        if x.order != self.order:
            raise OrderMismatch(f"form order {self.order}, element order {x.order}")
        acc = Scalar.zero(self.n)
        small, big = (self.coeffs, x.coeffs) if len(self.coeffs) <= len(x.coeffs) \
            else (x.coeffs, self.coeffs)
        for k, v in small.items():
            w = big.get(k)
            if w is not None:
                acc = acc + v * w
        return acc

    def contract(self, x, legs):
        """Partial evaluation on the given legs of x (0-based positions).

        The form's order must equal len(legs); remaining legs keep their
        original order.  Returns a TensorElement of order x.order - len(legs).
        """
        if len(legs) != self.order:
            raise LegMismatch(f"form of order {self.order} applied to {len(legs)} legs")
        if any(l < 0 or l >= x.order for l in legs):
            raise LegMismatch(f"legs {legs} out of range for order {x.order}")
        keep = [i for i in range(x.order) if i not in set(legs)]
        out = {}
        for key, v in x.coeffs.items():
            fval = self.coeffs.get(tuple(key[l] for l in legs))
            if fval is None:
                continue
            nk = tuple(key[i] for i in keep)
            c = v * fval
            cur = out.get(nk)
            s = c if cur is None else cur + c
            out[nk] = s
        out = {k: v for k, v in out.items() if v}
        return TensorElement.wrap(x.n, len(keep), out)

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in self.items_sorted())
        return f"LinearForm(order={self.order}, {{{terms}}})"


class LinearOperator:
    """Linear map H^(x m) -> H^(x n) backed by a sparse matrix.

    Indices are flattened row-major: (i_1, ..., i_k) -> ((i_1*dim + i_2)*dim + ...).
    """

    __slots__ = ("dim", "dom_order", "cod_order", "matrix")

    def __init__(self, dim, dom_order, cod_order, matrix):
        self.dim = dim
        self.dom_order = dom_order
        self.cod_order = cod_order
        self.matrix = matrix

    @classmethod
    def from_basis_images(cls, dim, n, images, cod_order=None):
        """Operator H -> H^(x k) from one TensorElement per basis element."""
        cod_order = images[0].order if cod_order is None else cod_order
        m = SparseMatrix(n, dim ** cod_order, dim)
        for j, img in enumerate(images):
            for key, v in img.coeffs.items():
                m.add_to(flatten_index(key, dim), j, v)
        return cls(dim, 1, cod_order, m)

    def apply(self, x):
        if x.order != self.dom_order:
            raise OrderMismatch("operator domain order mismatch")
        vec = {flatten_index(k, self.dim): v for k, v in x.coeffs.items()}
        out = self.matrix.apply(vec)
        return TensorElement.wrap(
            x.n, self.cod_order,
            {unflatten_index(i, self.dim, self.cod_order): v for i, v in out.items()})

    def compose(self, other):
        if other.cod_order != self.dom_order:
            raise OrderMismatch("operator composition order mismatch")
        return LinearOperator(self.dim, other.dom_order, self.cod_order,
                              self.matrix @ other.matrix)


def flatten_index(key, dim):
    idx = 0
    for k in key:
        idx = idx * dim + k
    return idx


def unflatten_index(idx, dim, order):
    key = [0] * order
    for pos in range(order - 1, -1, -1):
        idx, key[pos] = divmod(idx, dim)
    return tuple(key)


class AlgebraData:
    """Structure-constant presentation of a finite-dimensional unital algebra.

    table[(i, j)] is the sparse coordinate dict of e_i * e_j; absent pairs
    multiply to zero.  The basis order is fixed at construction and is part
    of the data (all reported coordinates use it).
    """

    __slots__ = ("n", "dim", "labels", "unit", "table")

    def __init__(self, n, dim, labels, unit, table):
        self.n = n
        self.dim = dim
        self.labels = list(labels)
        if len(self.labels) != dim:
            raise ValueError("label count does not match dimension")
        self.unit = unit  # TensorElement of order 1
        self.table = table

    def __eq__(self, other):
        if not isinstance(other, AlgebraData):
            return NotImplemented
        return (self.n, self.dim, self.labels, self.unit.coeffs) == \
            (other.n, other.dim, other.labels, other.unit.coeffs) and \
            self.table == other.table

    def basis(self, i):
        return TensorElement.wrap(self.n, 1, {(i,): Scalar.one(self.n)})

    def element(self, coords):
        """Element from {index: Scalar-or-int} coordinates."""
        out = {}
        for i, c in coords.items():
            if isinstance(c, int):
                c = Scalar.from_int(self.n, c)
            if c:
                out[(i,)] = c
        return TensorElement.wrap(self.n, 1, out)

    def unit_tensor(self, order):
        out = TensorElement.wrap(self.n, 0, {(): Scalar.one(self.n)})
        for _ in range(order):
            out = out.tensor(self.unit)
        return out

    def mul(self, x, y):
        """Componentwise product in H^(x k); bilinear, unit^(x k) neutral."""
        if x.order != y.order:
            raise OrderMismatch(f"orders {x.order} and {y.order}")
        table = self.table
        out = {}
        if x.order == 1:
            for (i,), cx in x.coeffs.items():
                for (j,), cy in y.coeffs.items():
                    cell = table.get((i, j))
                    if not cell:
                        continue
                    c = cx * cy
                    for k, ck in cell.items():
                        key = (k,)
                        cur = out.get(key)
                        s = c * ck if cur is None else cur + c * ck
                        out[key] = s
        else:
            for kx, cx in x.coeffs.items():
                for ky, cy in y.coeffs.items():
                    acc = [((), cx * cy)]
                    dead = False
                    for i, j in zip(kx, ky):
                        cell = table.get((i, j))
                        if not cell:
                            dead = True
                            break
                        acc = [(key + (k,), c * ck)
                               for key, c in acc for k, ck in cell.items()]
                    if dead:
                        continue
                    for key, c in acc:
                        cur = out.get(key)
                        s = c if cur is None else cur + c
                        out[key] = s
        out = {k: v for k, v in out.items() if v}
        return TensorElement.wrap(self.n, x.order, out)

    def mul_many(self, *elements):
        it = iter(elements)
        out = next(it)
        for el in it:
            out = self.mul(out, el)
        return out

    def left_mult_matrix(self, x):
        """Matrix of a |-> x*a in the fixed basis (x an element)."""
        m = SparseMatrix(self.n, self.dim, self.dim)
        for a in range(self.dim):
            for (i,), c in x.coeffs.items():
                cell = self.table.get((i, a))
                if cell:
                    for k, ck in cell.items():
                        m.add_to(k, a, c * ck)
        return m

    def right_mult_matrix(self, x):
        """Matrix of a |-> a*x in the fixed basis."""
        m = SparseMatrix(self.n, self.dim, self.dim)
        for a in range(self.dim):
            for (j,), c in x.coeffs.items():
                cell = self.table.get((a, j))
                if cell:
                    for k, ck in cell.items():
                        m.add_to(k, a, c * ck)
        return m


def apply_images_leg(images, x, leg):
    """Substitute images[i] (all of one order m) for basis index i on one leg.

    Realizes maps like Delta or S applied to a single tensor factor; the
    result order is x.order - 1 + m.
    """
    out = {}
    for key, c in x.coeffs.items():
        img = images[key[leg]]
        pre, post = key[:leg], key[leg + 1:]
        for ik, ic in img.coeffs.items():
            nk = pre + ik + post
            v = c * ic
            cur = out.get(nk)
            s = v if cur is None else cur + v
            out[nk] = s
    out = {k: v for k, v in out.items() if v}
    order = x.order - 1 + (images[0].order if images else 1)
    return TensorElement.wrap(x.n, order, out)


# -- hook actions -------------------------------------------------------------
#
# For h, a in H and f in H^*:
#     (h -> f)(a) = f(a h)          form shifted by right multiplication
#     (f <- h)(a) = f(h a)          form shifted by left multiplication
#     f -> h = h_(1) f(h_(2))       element, needs the coproduct
#     h <- f = f(h_(1)) h_(2)       element, needs the coproduct


def hit_form_right(A, h, f):
    """h -> f, i.e. f composed with right multiplication by h."""
    out = {}
    for a in range(A.dim):
        val = f.evaluate(A.mul(A.basis(a), h))
        if val:
            out[(a,)] = val
    return LinearForm(A.n, 1, out)


def hit_form_left(A, f, h):
    """f <- h, i.e. f composed with left multiplication by h."""
    out = {}
    for a in range(A.dim):
        val = f.evaluate(A.mul(h, A.basis(a)))
        if val:
            out[(a,)] = val
    return LinearForm(A.n, 1, out)


def hit_elem_right(A, delta_images, f, h):
    """f -> h = h_(1) f(h_(2))."""
    if delta_images is None:
        raise MissingCoproduct("element hook actions need the coproduct")
    dh = apply_images_leg(delta_images, h, 0)
    return f.contract(dh, (1,))


def hit_elem_left(A, delta_images, h, f):
    """h <- f = f(h_(1)) h_(2)."""
    if delta_images is None:
        raise MissingCoproduct("element hook actions need the coproduct")
    dh = apply_images_leg(delta_images, h, 0)
    return f.contract(dh, (0,))
