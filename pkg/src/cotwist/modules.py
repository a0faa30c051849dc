"""Comodule algebras and relative Hopf modules as free-basis presentations.

A module element is a Vec over keys (b_label, basis_id) meaning the left
normal form  sum c * (b . e_i);  this representative is unique because the
modules are free, which is what makes every equality in the engine exactly
decidable.  Balanced tensors are normalised by pushing coefficients to the
leftmost leg through the right-action straightening tables.

All module bases are required to be coinvariant (checked at construction);
every model in scope has coinvariant bases, while module *elements* carry
arbitrary weights.
"""

from __future__ import annotations

from .vectors import Vec


class ComodAlgebra:
    """Presentation of a left comodule *-algebra B over a Hopf algebra A."""

    def __init__(self, hopf, name="B"):
        self.hopf = hopf
        self.scalar_order = hopf.scalar_order
        self.name = name

    def mult(self, l1, l2):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def star(self, label):
        raise NotImplementedError

    def coact(self, label):
        """Vec over (a_label, b_label)."""
        raise NotImplementedError

    def label_name(self, label):
        return str(label)

    def generators(self):
        """Labels used for sampled Leibniz/bilinearity checks and emission."""
        raise NotImplementedError

    # element level --------------------------------------------------------

    def el(self, label, coeff=1):
        return Vec.single(self.scalar_order, label, coeff)

    def zero(self):
        return Vec(self.scalar_order)

    def mult_elem(self, v, w):
        out = Vec(self.scalar_order)
        for l1, c1 in v.terms.items():
            for l2, c2 in w.terms.items():
                for l3, c3 in self.mult(l1, l2).terms.items():
                    out.add_term(l3, c1 * c2 * c3)
        return out

    def star_elem(self, v):
        out = Vec(self.scalar_order)
        for l, c in v.terms.items():
            for l2, c2 in self.star(l).terms.items():
                out.add_term(l2, c.conj() * c2)
        return out

    def coact_elem(self, v):
        out = Vec(self.scalar_order)
        for l, c in v.terms.items():
            for (a, b), c2 in self.coact(l).terms.items():
                out.add_term((a, b), c * c2)
        return out


class SelfComodule(ComodAlgebra):
    """B = A as a comodule algebra over itself (coaction = coproduct).

    Covers both torus coordinate algebras (A = C[Z^n]) and the regular
    function-algebra instruments.
    """

    def __init__(self, hopf, name=None):
        super().__init__(hopf, name or hopf.name)

    def mult(self, l1, l2):
        return self.hopf.mult(l1, l2)

    def unit(self):
        return self.hopf.unit()

    def star(self, label):
        return self.hopf.star(label)

    def coact(self, label):
        return self.hopf.coproduct(label)

    def label_name(self, label):
        return self.hopf.label_name(label)

    def generators(self):
        fin = self.hopf.finite_labels()
        if fin is not None:
            return fin
        gens = []
        for i in range(self.hopf.rank):
            for s in (1, -1):
                lab = [0] * self.hopf.rank
                lab[i] = s
                gens.append(self.hopf.normalise(tuple(lab)))
        return list(dict.fromkeys(gens))


from .vectors import memoize_table as _memoize


class FreeModule:
    """A relative Hopf module, free as a left B-module on a finite basis."""

    def __init__(self, base, basis, name="E"):
        self.base = base
        self.basis = list(basis)
        self.name = name
        self.scalar_order = base.scalar_order
        # structure tables are pure; memoise the bound (most-derived) methods
        self.r_act = _memoize(self.r_act)
        self.l_to_r = _memoize(self.l_to_r)
        self.coact_basis = _memoize(self.coact_basis)

    # tables ---------------------------------------------------------------

    def r_act(self, i, b_label):
        """e_i . b in left normal form: Vec over (b_label, basis_id)."""
        raise NotImplementedError

    def l_to_r(self, b_label, i):
        """b . e_i in right normal form: Vec over (basis_id, b_label)."""
        raise NotImplementedError

    def coact_basis(self, i):
        """delta(e_i) as Vec over (a_label, b_label, basis_id)."""
        raise NotImplementedError

    def basis_name(self, i):
        return str(i)

    # element level ----------------------------------------------------------

    def el(self, i, coeff=1):
        """The basis element e_i (left coefficient 1_B)."""
        out = Vec(self.scalar_order)
        for b, c in self.base.unit().terms.items():
            out.add_term((b, i), c * coeff)
        return out

    def from_b(self, b_vec, i):
        """(b_vec) . e_i."""
        out = Vec(self.scalar_order)
        for b, c in b_vec.terms.items():
            out.add_term((b, i), c)
        return out

    def zero(self):
        return Vec(self.scalar_order)

    def lmul(self, b_vec, elem):
        out = Vec(self.scalar_order)
        for (b, i), c in elem.terms.items():
            for b2, c2 in b_vec.terms.items():
                for b3, c3 in self.base.mult(b2, b).terms.items():
                    out.add_term((b3, i), c * c2 * c3)
        return out

    def rmul(self, elem, b_vec):
        out = Vec(self.scalar_order)
        for (b, i), c in elem.terms.items():
            for b2, c2 in b_vec.terms.items():
                for (b3, i2), c3 in self.r_act(i, b2).terms.items():
                    for b4, c4 in self.base.mult(b, b3).terms.items():
                        out.add_term((b4, i2), c * c2 * c3 * c4)
        return out

    def coact(self, elem):
        """delta(elem) as Vec over (a_label, b_label, basis_id)."""
        out = Vec(self.scalar_order)
        for (b, i), c in elem.terms.items():
            bco = self.base.coact(b)
            for (a1, b1), c1 in bco.terms.items():
                for (a2, b2, i2), c2 in self.coact_basis(i).terms.items():
                    for a3, ca in self.base.hopf.mult(a1, a2).terms.items():
                        for b3, cb in self.base.mult(b1, b2).terms.items():
                            out.add_term((a3, b3, i2), c * c1 * c2 * ca * cb)
        return out

    def coact_iter(self, elem, legs):
        """Iterated coaction: Vec over (a,...,a, b_label, basis_id), `legs` A-legs."""
        out = self.coact(elem).map_keys(lambda k: ((k[0],), k[1], k[2]))
        A = self.base.hopf
        while len(next(iter(out.terms))[0]) < legs if out.terms else False:
            nxt = Vec(self.scalar_order)
            for (alegs, b, i), c in out.terms.items():
                for (a1, a2), c2 in A.coproduct(alegs[-1]).terms.items():
                    nxt.add_term((alegs[:-1] + (a1, a2), b, i), c * c2)
            out = nxt
        return out

    def describe(self, elem):
        return elem.describe(lambda k: f"{self.base.label_name(k[0])}.{self.basis_name(k[1])}")

    def check_coinvariant_basis(self):
        one = self.base.hopf.unit()
        for i in self.basis:
            got = Vec(self.scalar_order)
            for (a, b, j), c in self.coact_basis(i).terms.items():
                got.add_term((a, b, j), c)
            want = Vec(self.scalar_order)
            for a, ca in one.terms.items():
                for b, cb in self.base.unit().terms.items():
                    want.add_term((a, b, i), ca * cb)
            if got != want:
                raise ValueError(f"module basis {self.basis_name(i)} is not coinvariant")


class CentralBasisModule(FreeModule):
    """Free module on a central, coinvariant basis (the in-scope situation)."""

    def r_act(self, i, b_label):
        return Vec.single(self.scalar_order, (b_label, i))

    def l_to_r(self, b_label, i):
        return Vec.single(self.scalar_order, (i, b_label))

    def coact_basis(self, i):
        out = Vec(self.scalar_order)
        for a, ca in self.base.hopf.unit().terms.items():
            for b, cb in self.base.unit().terms.items():
                out.add_term((a, b, i), ca * cb)
        return out


class TensorModule(FreeModule):
    """E (x)_B F for free left modules, basis pairs, left normal form."""

    def __init__(self, left, right, name=None):
        if left.base is not right.base:
            raise ValueError("tensor factors live over different algebras")
        basis = [(i, j) for i in left.basis for j in right.basis]
        super().__init__(left.base, basis, name or f"{left.name}(x){right.name}")
        self.left = left
        self.right = right

    def basis_name(self, key):
        i, j = key
        return f"{self.left.basis_name(i)}(x){self.right.basis_name(j)}"

    def r_act(self, key, b_label):
        i, j = key
        out = Vec(self.scalar_order)
        for (b1, j2), c1 in self.right.r_act(j, b_label).terms.items():
            for (b2, i2), c2 in self.left.r_act(i, b1).terms.items():
                out.add_term((b2, (i2, j2)), c1 * c2)
        return out

    def l_to_r(self, b_label, key):
        i, j = key
        out = Vec(self.scalar_order)
        for (i2, b1), c1 in self.left.l_to_r(b_label, i).terms.items():
            for (j2, b2), c2 in self.right.l_to_r(b1, j).terms.items():
                out.add_term(((i2, j2), b2), c1 * c2)
        return out

    def coact_basis(self, key):
        i, j = key
        out = Vec(self.scalar_order)
        A = self.base.hopf
        for (a1, b1, i2), c1 in self.left.coact_basis(i).terms.items():
            for (a2, b2, j2), c2 in self.right.coact_basis(j).terms.items():
                # (b1 e_i2) (x) (b2 f_j2) = b1 ((e_i2 . b2) (x) f_j2)
                for (b3, i3), c3 in self.left.r_act(i2, b2).terms.items():
                    for a4, ca in A.mult(a1, a2).terms.items():
                        for b4, cb in self.base.mult(b1, b3).terms.items():
                            out.add_term((a4, b4, (i3, j2)), c1 * c2 * c3 * ca * cb)
        return out

    def pure(self, x, y):
        """x (x) y in left normal form (pushes y's coefficients into x)."""
        out = Vec(self.scalar_order)
        for (b, j), c in y.terms.items():
            moved = self.left.rmul(x, self.base.el(b))
            for (b2, i), c2 in moved.terms.items():
                out.add_term((b2, (i, j)), c * c2)
        return out

    def map_left(self, fn_module, fn, elem):
        """Apply a left-leg map (as elements of self.left -> fn_module) legwise."""
        target = TensorModule(fn_module, self.right)
        out = Vec(self.scalar_order)
        for (b, (i, j)), c in elem.terms.items():
            img = fn(self.left.el(i))
            img = fn_module.lmul(self.base.el(b), img)
            for (b2, i2), c2 in img.terms.items():
                out.add_term((b2, (i2, j)), c * c2)
        return target, out

    def map_right(self, fn_module, fn, elem):
        """Apply a right-leg map legwise (fn: self.right elements -> fn_module)."""
        target = TensorModule(self.left, fn_module)
        out = Vec(self.scalar_order)
        for (b, (i, j)), c in elem.terms.items():
            img = fn(self.right.el(j))
            piece = target.pure(self.left.from_b(self.base.el(b), i), img)
            out = out + piece.scale(c)
        return target, out


class ConjugateModule(FreeModule):
    """The conjugate module: b.mbar = (m b*)bar, mbar.b = (b* m)bar."""

    def __init__(self, inner, name=None):
        basis = [("bar", i) for i in inner.basis]
        super().__init__(inner.base, basis, name or f"bar({inner.name})")
        self.inner = inner

    def basis_name(self, key):
        return f"bar({self.inner.basis_name(key[1])})"

    def r_act(self, key, b_label):
        _, i = key
        out = Vec(self.scalar_order)
        # e_i bar . b = (b* e_i)bar; convert b* e_i to right normal form,
        # then (e_j . c)bar = c* . e_j bar
        for bs, cs in self.base.star(b_label).terms.items():
            for (i2, b2), c2 in self.inner.l_to_r(bs, i).terms.items():
                for b3, c3 in self.base.star(b2).terms.items():
                    out.add_term((b3, ("bar", i2)), (cs * c2).conj() * c3)
        return out

    def l_to_r(self, b_label, key):
        _, i = key
        out = Vec(self.scalar_order)
        # b . e_i bar = (e_i b*)bar; (c e_j)bar = e_j bar . c*
        for bs, cs in self.base.star(b_label).terms.items():
            for (b2, i2), c2 in self.inner.r_act(i, bs).terms.items():
                for b3, c3 in self.base.star(b2).terms.items():
                    out.add_term((("bar", i2), b3), (cs * c2).conj() * c3)
        return out

    def coact_basis(self, key):
        _, i = key
        out = Vec(self.scalar_order)
        A = self.base.hopf
        for (a, b, i2), c in self.inner.coact_basis(i).terms.items():
            # term a (x) (b e_i2)  ->  a* (x) (b e_i2)bar
            for a2, ca in A.star(a).terms.items():
                for (i3, b2), c2 in self.inner.l_to_r(b, i2).terms.items():
                    for b3, c3 in self.base.star(b2).terms.items():
                        out.add_term((a2, b3, ("bar", i3)), c.conj() * ca * c2.conj() * c3)
        return out


def conj_of(mod, elem):
    """The antilinear map  m -> mbar  from mod to its ConjugateModule keys."""
    out = Vec(mod.scalar_order)
    for (b, i), c in elem.terms.items():
        # (b e_i)bar: rewrite right-normal, then (e_j c)bar = c* e_j bar
        for (i2, b2), c2 in mod.l_to_r(b, i).terms.items():
            for b3, c3 in mod.base.star(b2).terms.items():
                out.add_term((b3, ("bar", i2)), (c * c2).conj() * c3)
    return out


def unconj(conj_mod, elem):
    """Inverse of conj_of: from ConjugateModule keys back to the inner module."""
    inner = conj_mod.inner
    out = Vec(inner.scalar_order)
    for (b, (_, i)), c in elem.terms.items():
        # b . e_i bar = (e_i . b*)bar, so the underlying element is e_i . b*
        piece = inner.rmul(inner.el(i), inner.base.star_elem(inner.base.el(b)))
        out = out + piece.scale(c.conj())
    return out


class HomModule(FreeModule):
    """Hom_B(E, B) for E free on a central coinvariant basis.

    Basis: dual functionals e^i with e^i(e_j) = delta_ij 1_B; key (b, dual-i)
    stands for b.e^i, where (b.f)(x) = f(x b).
    """

    def __init__(self, inner, name=None):
        basis = [("dual", i) for i in inner.basis]
        super().__init__(inner.base, basis, name or f"hom({inner.name},B)")
        self.inner = inner

    def basis_name(self, key):
        return f"dual({self.inner.basis_name(key[1])})"

    def r_act(self, key, b_label):
        _, i = key
        out = Vec(self.scalar_order)
        # (e^i . b)(e_j) = e^i(e_j) b = delta_ij b; with a central basis this
        # is b . e^i again
        for (i2, b2), c2 in self.inner.l_to_r(b_label, i).terms.items():
            out.add_term((b2, ("dual", i2)), c2)
        return out

    def l_to_r(self, b_label, key):
        _, i = key
        out = Vec(self.scalar_order)
        for (b2, i2), c2 in self.inner.r_act(i, b_label).terms.items():
            out.add_term((("dual", i2), b2), c2)
        return out

    def coact_basis(self, key):
        out = Vec(self.scalar_order)
        for a, ca in self.base.hopf.unit().terms.items():
            for b, cb in self.base.unit().terms.items():
                out.add_term((a, b, key), ca * cb)
        return out


def hom_apply(hom_mod, f_elem, e_elem):
    """Evaluate a Hom_B(E,B) element on an E element, returning a B element."""
    inner = hom_mod.inner
    base = hom_mod.base
    out = Vec(hom_mod.scalar_order)
    for (bf, (_, i)), cf in f_elem.terms.items():
        # (bf . e^i)(x) = e^i(x . bf)
        for (be, j), ce in e_elem.terms.items():
            for (b2, j2), c2 in inner.r_act(j, bf).terms.items():
                if j2 != i:
                    continue
                for b3, c3 in base.mult(be, b2).terms.items():
                    out.add_term(b3, cf * ce * c2 * c3)
    return out


def hom_coact(hom_mod, f_elem):
    """Coaction on Hom via  f_(-1) (x) f_(0)(e) = S(e_(-1)) f(e_(0))_(-1) (x) f(e_(0))_(0).

    Returns, per inner basis element e_i, the element of A (x) B obtained
    from the right side; used to verify covariance of Hermitian tables.
    """
    inner = hom_mod.inner
    base = hom_mod.base
    A = base.hopf
    per_basis = {}
    for i in inner.basis:
        out = Vec(hom_mod.scalar_order)
        for (a, b, i2), c in inner.coact_basis(i).terms.items():
            val = hom_apply(hom_mod, f_elem, inner.from_b(base.el(b), i2))
            for (a2, b2), c2 in base.coact_elem(val).terms.items():
                for a3, c3 in A.antipode(a).terms.items():
                    for a4, c4 in A.mult(a3, a2).terms.items():
                        out.add_term((a4, b2), c * c2 * c3 * c4)
        per_basis[i] = out
    return per_basis


class Morphism:
    """A left-linear map between free modules given by its basis table."""

    def __init__(self, src, dst, table, name="f"):
        self.src = src
        self.dst = dst
        self.table = dict(table)
        self.name = name

    def __call__(self, elem):
        out = Vec(self.dst.scalar_order)
        for (b, i), c in elem.terms.items():
            img = self.dst.lmul(self.src.base.el(b), self.table[i])
            out = out + img.scale(c)
        return out

    def compose(self, other):
        """self after other."""
        table = {i: self(other.table[i]) for i in other.src.basis}
        return Morphism(other.src, self.dst, table, f"{self.name}.{other.name}")

    @staticmethod
    def identity(mod):
        return Morphism(mod, mod, {i: mod.el(i) for i in mod.basis}, "id")


def right_linear_defect(f, b_label, i):
    lhs = f(f.src.rmul(f.src.el(i), f.src.base.el(b_label)))
    rhs = f.dst.rmul(f(f.src.el(i)), f.dst.base.el(b_label))
    return lhs - rhs


def covariance_defect(f, elem):
    lhs = f.dst.coact(f(elem))
    rhs = Vec(f.dst.scalar_order)
    for (a, b, i), c in f.src.coact(elem).terms.items():
        for (b2, i2), c2 in f(f.src.from_b(f.src.base.el(b), i)).terms.items():
            rhs.add_term((a, b2, i2), c * c2)
    return lhs - rhs
