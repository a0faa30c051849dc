"""Covariant *-differential calculi, complex structures, holomorphic data.

A calculus is a graded family of free modules with wedge/d/star tables on
basis forms, extended to elements by (graded) Leibniz and linearity.  The
cocycle twist shares all basis tables (the bases are coinvariant); the
deformation enters through the twisted comodule algebra underneath and is
re-verified by the calculus suite, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import Cyc
from .modules import CentralBasisModule, TensorModule
from .relhopf import phi_inv_map, twist_module
from .vectors import Vec, solve_cyc


@dataclass
class Form:
    degree: int
    vec: Vec

    def __add__(self, other):
        assert self.degree == other.degree
        return Form(self.degree, self.vec + other.vec)

    def __sub__(self, other):
        assert self.degree == other.degree
        return Form(self.degree, self.vec - other.vec)

    def scale(self, c):
        return Form(self.degree, self.vec.scale(c))

    def is_zero(self):
        return self.vec.is_zero()

    def __eq__(self, other):
        return self.degree == other.degree and self.vec == other.vec


class Calculus:
    """(Omega^., wedge, d, *) over a comodule algebra, tables on basis forms."""

    def __init__(self, base, modules, wedge_table, d_base, d_table, star_table, top):
        self.base = base
        self.modules = modules              # degree -> FreeModule (0 has basis ["1"])
        self.wedge_table = wedge_table      # (name1, name2) -> Vec of Omega^{k+l}
        self.d_base = d_base                # B label -> Vec of Omega^1
        self.d_table = d_table              # form name -> Vec of Omega^{k+1}
        self.star_table = star_table        # form name -> Vec of Omega^k
        self.top = top
        self.scalar_order = base.scalar_order
        self._degree_of = {}
        for k, mod in modules.items():
            for i in mod.basis:
                self._degree_of[i] = k

    def module(self, k):
        return self.modules[k]

    def degree_of(self, name):
        return self._degree_of[name]

    def zero_form(self, k):
        return Form(k, Vec(self.scalar_order))

    def basis_form(self, name):
        k = self.degree_of(name)
        return Form(k, self.module(k).el(name))

    def from_b(self, b_vec):
        return Form(0, self.module(0).from_b(b_vec, "1"))

    def to_b(self, form):
        assert form.degree == 0
        out = Vec(self.scalar_order)
        for (b, _), c in form.vec.terms.items():
            out.add_term(b, c)
        return out

    # -- d, wedge, star on elements ----------------------------------------

    def d(self, form):
        """Exterior derivative, extended from the tables by Leibniz."""
        k = form.degree
        if k >= self.top:
            return Form(k + 1, Vec(self.scalar_order))
        out = Vec(self.scalar_order)
        for (b, i), c in form.vec.terms.items():
            if k == 0:
                for key, c2 in self.d_base(b).terms.items():
                    out.add_term(key, c * c2)
                continue
            # d(b w) = db ^ w + b dw
            db = Form(1, self.d_base(b))
            piece = self.wedge(db, self.basis_form(i))
            out = out + piece.vec.scale(c)
            for (b2, i2), c2 in self.d_table[i].terms.items():
                for b3, c3 in self.base.mult(b, b2).terms.items():
                    out.add_term((b3, i2), c * c2 * c3)
        return Form(k + 1, out)

    def wedge(self, f1, f2):
        """Graded product through the right-action straightening."""
        k, l = f1.degree, f2.degree
        if k + l > self.top:
            return self.zero_form(k + l)
        out = Vec(self.scalar_order)
        B = self.base
        for (b1, i1), c1 in f1.vec.terms.items():
            for (b2, i2), c2 in f2.vec.terms.items():
                c12 = c1 * c2
                if k == 0:
                    for b3, c3 in B.mult(b1, b2).terms.items():
                        out.add_term((b3, i2), c12 * c3)
                    continue
                # (b1 w_i1) ^ (b2 w_i2) = b1 (w_i1 . b2) ^ w_i2
                for (b3, i3), c3 in self.module(k).r_act(i1, b2).terms.items():
                    pre = B.mult_elem(B.el(b1), B.el(b3))
                    if l == 0:
                        for b4, c4 in pre.terms.items():
                            out.add_term((b4, i3), c12 * c3 * c4)
                        continue
                    wt = self.wedge_table.get((i3, i2))
                    if wt is None:
                        continue
                    for (b5, i5), c5 in wt.terms.items():
                        for b6, c6 in B.mult_elem(pre, B.el(b5)).terms.items():
                            out.add_term((b6, i5), c12 * c3 * c5 * c6)
        return Form(k + l, out)

    def star(self, form):
        """Antilinear involution: (b w)* = w* b* for degree-0 coefficients."""
        k = form.degree
        mod = self.module(k)
        out = Vec(self.scalar_order)
        for (b, i), c in form.vec.terms.items():
            bs = self.base.star(b)
            for (b2, i2), c2 in self.star_table[i].terms.items():
                for b3, c3 in bs.terms.items():
                    for (b4, i4), c4 in mod.r_act(i2, b3).terms.items():
                        for b5, c5 in self.base.mult(b2, b4).terms.items():
                            out.add_term((b5, i4), c.conj() * c2 * c3 * c4 * c5)
        return Form(k, out)


def twist_calculus(cal, data, twisted_base):
    """The deformed calculus: twisted modules, shared basis tables."""
    modules = {k: twist_module(m, data, twisted_base) for k, m in cal.modules.items()}
    return Calculus(twisted_base, modules, cal.wedge_table, cal.d_base,
                    cal.d_table, cal.star_table, cal.top)


class ComplexStructure:
    """An N0^2 bigrading by basis forms, with projections and del/delbar."""

    def __init__(self, cal, bigrade):
        self.cal = cal
        self.bigrade = dict(bigrade)   # basis name -> (p, q)

    def proj(self, form, p, q):
        out = Vec(self.cal.scalar_order)
        for (b, i), c in form.vec.terms.items():
            if self.bigrade.get(i) == (p, q):
                out.add_term((b, i), c)
        return Form(form.degree, out)

    def components(self, form):
        out = {}
        for (b, i), c in form.vec.terms.items():
            pq = self.bigrade[i]
            out.setdefault(pq, Vec(self.cal.scalar_order)).add_term((b, i), c)
        return {pq: Form(form.degree, v) for pq, v in out.items()}

    def del_(self, form):
        out = self.cal.zero_form(form.degree + 1)
        for (p, q), comp in self.components(form).items():
            out = out + self.proj(self.cal.d(comp), p + 1, q)
        return out

    def delbar(self, form):
        out = self.cal.zero_form(form.degree + 1)
        for (p, q), comp in self.components(form).items():
            out = out + self.proj(self.cal.d(comp), p, q + 1)
        return out

    def delbar_b(self, b_vec):
        return self.delbar(self.cal.from_b(b_vec))

    def del_b(self, b_vec):
        return self.del_(self.cal.from_b(b_vec))

    def submodule(self, p, q, name=None):
        basis = [i for i in self.cal.module(p + q).basis if self.bigrade[i] == (p, q)]
        return CentralBasisModule(self.cal.base, basis, name or f"O({p},{q})")

    def opposite(self):
        swapped = {i: (q, p) for i, (p, q) in self.bigrade.items()}
        return ComplexStructure(self.cal, swapped)


def twist_complex_structure(cs, twisted_cal):
    return ComplexStructure(twisted_cal, cs.bigrade)


class NotFactorizable(ValueError):
    pass


def factorization_inverse(cs, left_grade=(0, 1), right_grade=(1, 0)):
    """Invert the wedge map O^{left} (x) O^{right} -> O^{(1,1)} exactly.

    Returns a function from Omega^{(1,1)} elements to tensor elements in
    TensorModule(sub_left, sub_right), plus the tensor module itself.
    Raises NotFactorizable when the exact solve is singular.
    """
    cal = cs.cal
    sub_l = cs.submodule(*left_grade)
    sub_r = cs.submodule(*right_grade)
    tens = TensorModule(sub_l, sub_r)
    target_names = [i for i in cal.module(2).basis if cs.bigrade[i] == (1, 1)]
    pair_names = tens.basis
    order = cal.scalar_order
    # wedge matrix columns: image of each pair basis; entries must be
    # coinvariant (scalar) for the exact solve over Q(zeta)
    cols = []
    for (i, j) in pair_names:
        img = cal.wedge(cal.basis_form(i), cal.basis_form(j))
        col = []
        for t in target_names:
            c = Cyc.zero(order)
            for (b, i2), cc in img.vec.terms.items():
                if i2 == t:
                    unit_terms = dict(cal.base.unit().terms)
                    if b in unit_terms:
                        c = c + cc * unit_terms[b]
                    else:
                        raise NotFactorizable(
                            "wedge image has non-coinvariant coefficient")
            col.append(c)
        cols.append(col)
    inv_table = {}
    for ti, t in enumerate(target_names):
        rows = [[cols[p][r] for p in range(len(pair_names))] for r in range(len(target_names))]
        rhs = [Cyc.one(order) if r == ti else Cyc.zero(order) for r in range(len(target_names))]
        sol, kernel, bad = solve_cyc(rows, rhs, order)
        if sol is None or kernel:
            raise NotFactorizable(
                f"wedge map {left_grade}x{right_grade} -> (1,1) is singular")
        out = Vec(order)
        for p, key in enumerate(pair_names):
            if not sol[p].is_zero():
                for b, cb in cal.base.unit().terms.items():
                    out.add_term((b, key), sol[p] * cb)
        inv_table[t] = out

    def theta(form):
        out = Vec(order)
        for (b, i), c in form.vec.terms.items():
            if cs.bigrade[i] != (1, 1):
                raise ValueError("factorization inverse expects a (1,1)-form")
            piece = tens.lmul(cal.base.el(b), inv_table[i])
            out = out + piece.scale(c)
        return out

    return theta, tens


class HoloModule:
    """A module with a delbar-connection of vanishing holomorphic curvature."""

    def __init__(self, cs, module, tensor_01, delbar_table, name="E"):
        self.cs = cs
        self.module = module
        self.tensor_01 = tensor_01      # TensorModule(O^{(0,1)}-module, module)
        self.delbar_table = dict(delbar_table)   # basis -> tensor element
        self.name = name

    def delbar_conn(self, elem):
        """delbar_E(b e) = b delbar_E(e) + delbar(b) (x) e."""
        cs, mod, tens = self.cs, self.module, self.tensor_01
        out = Vec(mod.scalar_order)
        for (b, i), c in elem.terms.items():
            piece = tens.lmul(mod.base.el(b), self.delbar_table[i])
            out = out + piece.scale(c)
            db = cs.delbar_b(mod.base.el(b))
            sub_01 = tens.left
            db_sub = Vec(mod.scalar_order)
            for (b2, i2), c2 in db.vec.terms.items():
                db_sub.add_term((b2, i2), c2)
            out = out + tens.pure(db_sub, mod.el(i)).scale(c)
        return out

    def curvature(self, i):
        """R^Hol(e_i) = (delbar (x) id - id ^ delbar_E) delbar_E (e_i)."""
        cs, mod, tens = self.cs, self.module, self.tensor_01
        base = mod.base
        first = self.delbar_table[i]
        out = Vec(mod.scalar_order)
        # (delbar (x) id): delbar hits the (0,1) form leg with its left coefficient
        for (b, (w, j)), c in first.terms.items():
            dpart = cs.delbar(Form(1, Vec.single(mod.scalar_order, (b, w), c)))
            for (b2, w2), c2 in dpart.vec.terms.items():
                out.add_term((b2, (w2, j)), c2)
        # (id ^ delbar_E): wedge the form leg with delbar_E of the module leg
        for (b, (w, j)), c in first.terms.items():
            inner = self.delbar_conn(mod.el(j))
            for (b2, (w2, j2)), c2 in inner.terms.items():
                wedged = cs.cal.wedge(
                    Form(1, Vec.single(mod.scalar_order, (b, w), c)),
                    Form(1, Vec.single(mod.scalar_order, (b2, w2), c2)))
                for (b3, w3), c3 in wedged.vec.terms.items():
                    out.add_term((b3, (w3, j2)), -c3)
        return out


def holomorphic_from_factorizable(cs, grade=(1, 0)):
    """The canonical holomorphic structure delbar_E = theta . delbar on O^{grade}.

    grade (1,0) uses the given complex structure; grade (0,1) uses the
    opposite one (whose delbar is del), per the opposite-structure recipe.
    The returned HoloModule carries the view in whose terms it is holomorphic.
    """
    if grade == (1, 0):
        view = cs
        theta, tens = factorization_inverse(cs, (0, 1), (1, 0))
    elif grade == (0, 1):
        view = cs.opposite()
        theta, tens = factorization_inverse(cs, (1, 0), (0, 1))
    else:
        raise ValueError("holomorphic structures are built in degree one")
    mod = cs.submodule(*grade)
    tens2 = TensorModule(tens.left, mod)
    table = {}
    for i in mod.basis:
        img = view.delbar(cs.cal.basis_form(i))
        table[i] = theta(img) if not img.is_zero() else Vec(cs.cal.scalar_order)
    return HoloModule(view, mod, tens2, table, name=f"O{grade}")


def twist_holomorphic(h, data, twisted_cs, twisted_base):
    """delbar on Gamma(E) is phi^-1 . Gamma(delbar_E), per-basis tables."""
    mod_tw = twist_module(h.module, data, twisted_base)
    left_tw = twist_module(h.tensor_01.left, data, twisted_base)
    tens_tw = TensorModule(left_tw, mod_tw)
    table = {
        i: phi_inv_map(data, tens_tw, h.tensor_01, v)
        for i, v in h.delbar_table.items()
    }
    return HoloModule(twisted_cs, mod_tw, tens_tw, table, name=f"tw({h.name})")


class KahlerData:
    """A candidate Hermitian/Kahler form with its Lefschetz data."""

    def __init__(self, cal, cs, kappa, dimension=1):
        self.cal = cal
        self.cs = cs
        self.kappa = kappa        # a Form of degree 2
        self.dimension = dimension

    def lefschetz_matrix(self, k=0):
        """The matrix of L^{n-k}: Omega^k -> Omega^{2n-k} over scalars."""
        cal = self.cal
        n = self.dimension
        power = n - k
        src = cal.module(k)
        dst = cal.module(2 * n - k)
        order = cal.scalar_order
        unit_terms = dict(cal.base.unit().terms)
        cols = []
        for i in src.basis:
            img = Form(k, src.el(i))
            for _ in range(power):
                img = cal.wedge(self.kappa, img)
            col = []
            for t in dst.basis:
                c = Cyc.zero(order)
                for (b, i2), cc in img.vec.terms.items():
                    if i2 == t:
                        if b not in unit_terms:
                            raise ValueError("Lefschetz image not coinvariant")
                        c = c + cc * unit_terms[b]
                col.append(c)
            cols.append(col)
        return [[cols[j][i] for j in range(len(src.basis))] for i in range(len(dst.basis))]

    def lefschetz_bijective(self, k=0):
        mat = self.lefschetz_matrix(k)
        n_src = len(mat[0]) if mat else 0
        order = self.cal.scalar_order
        if len(mat) != n_src:
            return False
        for col in range(n_src):
            rhs = [Cyc.one(order) if r == col else Cyc.zero(order) for r in range(len(mat))]
            sol, kernel, bad = solve_cyc(mat, rhs, order)
            if sol is None or kernel:
                return False
        return True


def fundamental_form(cal, cs, pairing_table, complex_op):
    """kappa = sum_i Iinv(Vinv(f_i)) ^ f^i for the classical recipe.

    pairing_table maps basis-name pairs to scalars ((w_i, w_j)); complex_op
    maps basis names to Omega^1 elements (the almost complex structure I).
    V(eta)(xi) = (xi, eta), so Vinv(f_i) is the solve of (., eta) = dual_i.
    """
    names = cal.module(1).basis
    order = cal.scalar_order
    n = len(names)
    rows = [[pairing_table[(names[r], names[c])] for c in range(n)] for r in range(n)]
    kappa = cal.zero_form(2)
    for idx, f_i in enumerate(names):
        rhs = [Cyc.one(order) if r == idx else Cyc.zero(order) for r in range(n)]
        sol, kernel, bad = solve_cyc(rows, rhs, order)
        if sol is None or kernel:
            raise ValueError("pairing is degenerate; no fundamental form")
        v_inv = Vec(order)
        for j, c in enumerate(sol):
            if not c.is_zero():
                v_inv = v_inv + cal.module(1).el(names[j]).scale(c)
        # apply I^{-1} = -I (I^2 = -id)
        i_inv = Vec(order)
        for (b, w), c in v_inv.terms.items():
            img = complex_op(w)
            for (b2, w2), c2 in img.terms.items():
                i_inv.add_term((b2, w2), -(c * c2))
        kappa = kappa + cal.wedge(Form(1, i_inv), cal.basis_form(f_i))
    return kappa
