"""2-cocycles, their convolution calculus and the twisted Hopf *-algebra.

A cocycle gamma is a convolution-invertible functional on A tensor A; the
engine keeps gamma and its inverse as total functions on basis label pairs
(closed form for lattice algebras, tables for finite ones) and derives the
four auxiliary functionals

    U(k)  = gamma(k1 (x) S(k2))        Ubar(k) = gammabar(S(k1) (x) k2)
    V(k)  = U(S^-1 k)                  Vbar(k) = Ubar(S^-1 k)

that build the twisted antipode and involution.  The twisted algebra A_g
shares Delta and epsilon with A and carries

    h ._g k   = gamma(h1 (x) k1) h2 k2 gammabar(h3 (x) k3)
    S_g(h)    = U(h1) S(h2) Ubar(h3)
    h^{*_g}   = Vbar(h1*) h2* V(h3*)
    S_g^{-1}  = V(h1) S^-1(h2) Vbar(h3)   (from U*Ubar = V*Vbar = counit)
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyc, root_from_fraction
from .hopf import HopfAlgebra
from .vectors import Vec, solve_cyc


class PairFunctional:
    """A linear functional on A (x) A, total on basis label pairs."""

    def __init__(self, A, fn, descriptor=None):
        self.A = A
        self.fn = fn
        self.descriptor = descriptor or {"kind": "table"}
        self._cache = {}

    def __call__(self, l1, l2):
        key = (l1, l2)
        out = self._cache.get(key)
        if out is None:
            out = self.fn(l1, l2)
            self._cache[key] = out
        return out

    def on_elems(self, v, w):
        """Bilinear extension to a pair of elements."""
        out = Cyc.zero(self.A.scalar_order)
        for l1, c1 in v.terms.items():
            for l2, c2 in w.terms.items():
                out = out + c1 * c2 * self(l1, l2)
        return out

    def on_pairs(self, pair_vec):
        """Linear extension to a Vec over (l1, l2) keys."""
        out = Cyc.zero(self.A.scalar_order)
        for (l1, l2), c in pair_vec.terms.items():
            out = out + c * self(l1, l2)
        return out


def counit_functional(A):
    return PairFunctional(
        A, lambda l1, l2: A.counit(l1) * A.counit(l2), {"kind": "trivial"})


def convolve(phi, psi, A):
    """(phi * psi)(a (x) b) = phi(a1 (x) b1) psi(a2 (x) b2)."""

    def fn(l1, l2):
        out = Cyc.zero(A.scalar_order)
        for (a1, a2), ca in A.coproduct(l1).terms.items():
            for (b1, b2), cb in A.coproduct(l2).terms.items():
                out = out + ca * cb * phi(a1, b1) * psi(a2, b2)
        return out

    return PairFunctional(A, fn, {"kind": "convolution"})


class NotInvertible(ValueError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


def convolution_inverse(gamma, A, strategy="grouplike_pointwise", candidate=None, box=2):
    """Produce (or verify) the convolution inverse of gamma.

    grouplike_pointwise: basis grouplike, so the inverse is the pointwise
    reciprocal.  table_solve: finite algebra, exact dense solve of
    gamma * psi = counit over Q(zeta).  user_supplied: verify `candidate`.
    """
    if strategy == "grouplike_pointwise":
        if not A.is_grouplike_basis():
            raise NotInvertible("grouplike_pointwise needs a grouplike basis")

        def fn(l1, l2):
            v = gamma(l1, l2)
            if v.is_zero():
                raise NotInvertible(
                    f"gamma vanishes at ({A.label_name(l1)},{A.label_name(l2)})",
                    pair=(l1, l2))
            return v.inverse()

        return PairFunctional(A, fn, {"kind": "pointwise_reciprocal"})

    if strategy == "table_solve":
        labels = A.finite_labels()
        if labels is None:
            raise NotInvertible("table_solve needs a finite algebra")
        n = len(labels)
        idx = {l: i for i, l in enumerate(labels)}
        order = A.scalar_order
        rows, rhs = [], []
        eps = counit_functional(A)
        for a in labels:
            for b in labels:
                row = [Cyc.zero(order) for _ in range(n * n)]
                for (a1, a2), ca in A.coproduct(a).terms.items():
                    for (b1, b2), cb in A.coproduct(b).terms.items():
                        row[idx[a2] * n + idx[b2]] = (
                            row[idx[a2] * n + idx[b2]] + ca * cb * gamma(a1, b1))
                rows.append(row)
                rhs.append(eps(a, b))
        sol, kernel, bad = solve_cyc(rows, rhs, order)
        if sol is None:
            a, b = labels[bad // n], labels[bad % n]
            raise NotInvertible(
                f"gamma has no convolution inverse; inconsistent at "
                f"({A.label_name(a)},{A.label_name(b)})", pair=(a, b))
        table = {(a, b): sol[idx[a] * n + idx[b]] for a in labels for b in labels}
        psi = PairFunctional(A, lambda l1, l2: table[(l1, l2)], {"kind": "table"})
        # table_solve only imposed gamma * psi; confirm the other side
        other = convolve(psi, gamma, A)
        for a in labels:
            for b in labels:
                if other(a, b) != eps(a, b):
                    raise NotInvertible(
                        f"one-sided inverse only, fails at ({A.label_name(a)},{A.label_name(b)})",
                        pair=(a, b))
        return psi

    if strategy == "user_supplied":
        if candidate is None:
            raise NotInvertible("user_supplied strategy needs a candidate")
        eps = counit_functional(A)
        left = convolve(gamma, candidate, A)
        right = convolve(candidate, gamma, A)
        for a in A.labels_box(box):
            for b in A.labels_box(box):
                if left(a, b) != eps(a, b) or right(a, b) != eps(a, b):
                    raise NotInvertible(
                        f"candidate is not a convolution inverse at "
                        f"({A.label_name(a)},{A.label_name(b)})", pair=(a, b))
        return candidate

    raise ValueError(f"unknown strategy {strategy!r}")


class CocycleData:
    """gamma with its convolution inverse, U/Ubar/V/Vbar and status flags."""

    def __init__(self, A, gamma, gamma_bar, flags=None):
        self.hopf = A
        self.gamma = gamma
        self.gamma_bar = gamma_bar
        self.flags = {"cocycle_verified": False, "unital": False, "unitary": False}
        if flags:
            self.flags.update(flags)
        self._U, self._Ubar, self._V, self._Vbar = {}, {}, {}, {}

    # the four derived functionals, memoised per label -------------------

    def U(self, label):
        out = self._U.get(label)
        if out is None:
            A = self.hopf
            out = Cyc.zero(A.scalar_order)
            for (k1, k2), c in A.coproduct(label).terms.items():
                for l2, c2 in A.antipode(k2).terms.items():
                    out = out + c * c2 * self.gamma(k1, l2)
            self._U[label] = out
        return out

    def Ubar(self, label):
        out = self._Ubar.get(label)
        if out is None:
            A = self.hopf
            out = Cyc.zero(A.scalar_order)
            for (k1, k2), c in A.coproduct(label).terms.items():
                for l1, c1 in A.antipode(k1).terms.items():
                    out = out + c * c1 * self.gamma_bar(l1, k2)
            self._Ubar[label] = out
        return out

    def V(self, label):
        out = self._V.get(label)
        if out is None:
            out = self._apply_s_inv(self.U, label)
            self._V[label] = out
        return out

    def Vbar(self, label):
        out = self._Vbar.get(label)
        if out is None:
            out = self._apply_s_inv(self.Ubar, label)
            self._Vbar[label] = out
        return out

    def _apply_s_inv(self, func, label):
        A = self.hopf
        out = Cyc.zero(A.scalar_order)
        for l, c in A.antipode_inv(label).terms.items():
            out = out + c * func(l)
        return out

    def U_elem(self, v):
        out = Cyc.zero(self.hopf.scalar_order)
        for l, c in v.terms.items():
            out = out + c * self.U(l)
        return out

    def V_elem(self, v):
        out = Cyc.zero(self.hopf.scalar_order)
        for l, c in v.terms.items():
            out = out + c * self.V(l)
        return out

    def Ubar_elem(self, v):
        out = Cyc.zero(self.hopf.scalar_order)
        for l, c in v.terms.items():
            out = out + c * self.Ubar(l)
        return out

    def Vbar_elem(self, v):
        out = Cyc.zero(self.hopf.scalar_order)
        for l, c in v.terms.items():
            out = out + c * self.Vbar(l)
        return out

    def is_trivial(self):
        return self.descriptor_kind() == "trivial"

    def descriptor_kind(self):
        return self.gamma.descriptor.get("kind", "table")

    def inverse_data(self, twisted_hopf):
        """gammabar as a cocycle on the twisted algebra (for round trips)."""
        gb = PairFunctional(twisted_hopf, self.gamma_bar.fn, self.gamma_bar.descriptor)
        g = PairFunctional(twisted_hopf, self.gamma.fn, self.gamma.descriptor)
        return CocycleData(twisted_hopf, gb, g, dict(self.flags))


def trivial_cocycle(A):
    eps = counit_functional(A)
    eps.descriptor = {"kind": "trivial"}
    data = CocycleData(A, eps, counit_functional(A),
                       {"cocycle_verified": True, "unital": True, "unitary": True})
    return data


def theta_cocycle(A, theta, order=None):
    """Exponential bicharacter cocycle on C[Z^n] from a rational skew matrix.

    gamma(u_m (x) u_n) = e^{2 pi i <<theta m, n>>}, exact at rational theta:
    the value is a root of unity in Q(zeta_order).
    """
    n = A.free_rank
    if A.torsion or n == 0:
        raise ValueError("theta cocycle lives on a free lattice algebra")
    theta = [[Fraction(x) for x in row] for row in theta]
    for i in range(n):
        for j in range(n):
            if theta[i][j] != -theta[j][i]:
                raise ValueError("theta must be skew-symmetric")
    order = order or A.scalar_order

    def fn(l1, l2):
        # <<theta m, n>> = sum_ij theta[i][j] m[j] n[i]
        t = Fraction(0)
        for i in range(n):
            for j in range(n):
                if theta[i][j]:
                    t += theta[i][j] * l1[j] * l2[i]
        return root_from_fraction(t, order).embed(A.scalar_order) \
            if order != A.scalar_order else root_from_fraction(t, order)

    gamma = PairFunctional(A, fn, {"kind": "theta", "theta": theta})
    gamma_bar = convolution_inverse(gamma, A, "grouplike_pointwise")
    return CocycleData(A, gamma, gamma_bar,
                       {"cocycle_verified": True, "unital": True, "unitary": True})


def bicharacter_cocycle(A, pairing, root_order=None):
    """gamma(u_a (x) u_b) = zeta^{sum_ij P[i][j] a_i b_j} on a finite or free lattice."""
    rank = A.rank
    root_order = root_order or A.scalar_order

    def fn(l1, l2):
        e = 0
        for i in range(rank):
            for j in range(rank):
                if pairing[i][j]:
                    e += pairing[i][j] * l1[i] * l2[j]
        return Cyc.root(root_order, e).embed(A.scalar_order) \
            if root_order != A.scalar_order else Cyc.root(root_order, e)

    gamma = PairFunctional(A, fn, {"kind": "bicharacter", "pairing": pairing})
    gamma_bar = convolution_inverse(gamma, A, "grouplike_pointwise")
    return CocycleData(A, gamma, gamma_bar,
                       {"cocycle_verified": True, "unital": True, "unitary": True})


class TwistedHopf(HopfAlgebra):
    """The 2-cocycle twist A_gamma, sharing coalgebra structure with A."""

    def __init__(self, base, data):
        if data.hopf is not base:
            raise ValueError("cocycle data bound to a different algebra")
        self.base = base
        self.data = data
        self.scalar_order = base.scalar_order
        self.name = base.name + "_twisted"
        self._mult_cache = {}
        self._antipode_cache = {}
        self._antipode_inv_cache = {}
        self._star_cache = {}

    def mult(self, l1, l2):
        key = (l1, l2)
        out = self._mult_cache.get(key)
        if out is None:
            A, d = self.base, self.data
            out = Vec(self.scalar_order)
            for (h1, h2, h3), ch in A.sweedler(l1, 3).terms.items():
                for (k1, k2, k3), ck in A.sweedler(l2, 3).terms.items():
                    c = ch * ck * d.gamma(h1, k1) * d.gamma_bar(h3, k3)
                    if c.is_zero():
                        continue
                    for l, cl in A.mult(h2, k2).terms.items():
                        out.add_term(l, c * cl)
            self._mult_cache[key] = out
        return out

    def unit(self):
        return self.base.unit()

    def coproduct(self, label):
        return self.base.coproduct(label)

    def counit(self, label):
        return self.base.counit(label)

    def antipode(self, label):
        out = self._antipode_cache.get(label)
        if out is None:
            A, d = self.base, self.data
            out = Vec(self.scalar_order)
            for (h1, h2, h3), c in A.sweedler(label, 3).terms.items():
                coeff = c * d.U(h1) * d.Ubar(h3)
                if coeff.is_zero():
                    continue
                for l, cl in A.antipode(h2).terms.items():
                    out.add_term(l, coeff * cl)
            self._antipode_cache[label] = out
        return out

    def antipode_inv(self, label):
        out = self._antipode_inv_cache.get(label)
        if out is None:
            A, d = self.base, self.data
            out = Vec(self.scalar_order)
            for (h1, h2, h3), c in A.sweedler(label, 3).terms.items():
                coeff = c * d.V(h1) * d.Vbar(h3)
                if coeff.is_zero():
                    continue
                for l, cl in A.antipode_inv(h2).terms.items():
                    out.add_term(l, coeff * cl)
            self._antipode_inv_cache[label] = out
        return out

    def star(self, label):
        out = self._star_cache.get(label)
        if out is None:
            if not self.data.flags.get("unitary"):
                raise ValueError("twisted star needs a unitary cocycle")
            A, d = self.base, self.data
            out = Vec(self.scalar_order)
            # h^{*_g} = Vbar(h1*) h2* V(h3*); Delta is a *-homomorphism, so
            # the starred Sweedler legs are the stars of the legs.
            for (h1, h2, h3), c in A.sweedler(label, 3).terms.items():
                s1 = A.star(h1)
                s3 = A.star(h3)
                coeff = c.conj() * d.Vbar_elem(s1) * d.V_elem(s3)
                if coeff.is_zero():
                    continue
                for l, cl in A.star(h2).terms.items():
                    out.add_term(l, coeff * cl)
            self._star_cache[label] = out
        return out

    def label_name(self, label):
        return self.base.label_name(label)

    def finite_labels(self):
        return self.base.finite_labels()

    def labels_box(self, box):
        return self.base.labels_box(box)

    def is_grouplike_basis(self):
        return self.base.is_grouplike_basis()


def twist_hopf(A, data):
    if not data.flags.get("cocycle_verified"):
        raise ValueError("cocycle must be verified before twisting")
    return TwistedHopf(A, data)


# -- identity suites ---------------------------------------------------------


def verify_cocycle_identities(data, A, triples, reporter, prefix="cocycle",
                              cross_check=True):
    """The cocycle equation, its three equivalent forms, and unitality."""
    g, gb = data.gamma, data.gamma_bar
    eps = counit_functional(A)

    def two(l):
        return A.sweedler(l, 2)

    def name(t):
        return ",".join(A.label_name(x) for x in t)

    with reporter.check(f"{prefix}.equation", anchor="cocycle.equation") as ck:
        for (lg, lh, lk) in triples:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (g1, g2), cg in two(lg).terms.items():
                for (h1, h2), chh in two(lh).terms.items():
                    prod = A.mult(g2, h2)
                    lhs = lhs + cg * chh * g(g1, h1) * g.on_elems(prod, A.el(lk))
            for (h1, h2), chh in two(lh).terms.items():
                for (k1, k2), ckk in two(lk).terms.items():
                    prod = A.mult(h2, k2)
                    rhs = rhs + chh * ckk * g(h1, k1) * g.on_elems(A.el(lg), prod)
            if lhs != rhs:
                ck.fail(f"cocycle equation fails at ({name((lg, lh, lk))})")
                break

    with reporter.check(f"{prefix}.equivalent-ii", anchor="cocycle.inverse-equation") as ck:
        for (lg, lh, lk) in triples:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (g1, g2), cg in two(lg).terms.items():
                for (h1, h2), chh in two(lh).terms.items():
                    lhs = lhs + cg * chh * gb.on_elems(A.mult(g1, h1), A.el(lk)) * gb(g2, h2)
            for (h1, h2), chh in two(lh).terms.items():
                for (k1, k2), ckk in two(lk).terms.items():
                    rhs = rhs + chh * ckk * gb.on_elems(A.el(lg), A.mult(h1, k1)) * gb(h2, k2)
            if lhs != rhs:
                ck.fail(f"identity (ii) fails at ({name((lg, lh, lk))})")
                break

    with reporter.check(f"{prefix}.equivalent-iii", anchor="cocycle.mixed-identity-left") as ck:
        for (lg, lh, lk) in triples:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (g1, g2), cg in two(lg).terms.items():
                for (h1, h2), chh in two(lh).terms.items():
                    for (k1, k2), ckk in two(lk).terms.items():
                        c = cg * chh * ckk
                        lhs = lhs + c * g.on_elems(A.mult(g1, h1), A.el(k1)) \
                            * gb.on_elems(A.el(g2), A.mult(h2, k2))
            for (h1, h2), chh in two(lh).terms.items():
                rhs = rhs + chh * gb(lg, h1) * g(h2, lk)
            if lhs != rhs:
                ck.fail(f"identity (iii) fails at ({name((lg, lh, lk))})")
                break

    with reporter.check(f"{prefix}.equivalent-iv", anchor="cocycle.mixed-identity-right") as ck:
        for (lg, lh, lk) in triples:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (g1, g2), cg in two(lg).terms.items():
                for (h1, h2), chh in two(lh).terms.items():
                    for (k1, k2), ckk in two(lk).terms.items():
                        c = cg * chh * ckk
                        lhs = lhs + c * g.on_elems(A.el(g1), A.mult(h1, k1)) \
                            * gb.on_elems(A.mult(g2, h2), A.el(k2))
            for (h1, h2), chh in two(lh).terms.items():
                rhs = rhs + chh * g(lg, h2) * gb(h1, lk)
            if lhs != rhs:
                ck.fail(f"identity (iv) fails at ({name((lg, lh, lk))})")
                break

    labels = sorted({l for t in triples for l in t})
    with reporter.check(f"{prefix}.unital", anchor="cocycle.unitality") as ck:
        one = A.unit()
        for l in labels:
            left = g.on_elems(A.el(l), one)
            right = g.on_elems(one, A.el(l))
            if left != A.counit(l) or right != A.counit(l):
                ck.fail(f"unitality fails at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.convolution-inverse", anchor="cocycle.convolution-inverse") as ck:
        left = convolve(g, gb, A)
        right = convolve(gb, g, A)
        pairs = {(a, b) for (a, b, _) in triples} | {(b, c) for (_, b, c) in triples}
        for a, b in sorted(pairs):
            if left(a, b) != eps(a, b) or right(a, b) != eps(a, b):
                ck.fail(f"gamma*gammabar != counit at ({A.label_name(a)},{A.label_name(b)})")
                break

    if cross_check and A.is_grouplike_basis():
        with reporter.check(f"{prefix}.grouplike-crosscheck", anchor="cocycle.group-cocycle-form") as ck:
            for (lg, lh, lk) in triples:
                gh = next(iter(A.mult(lg, lh).terms))
                hk = next(iter(A.mult(lh, lk).terms))
                lhs = g(lg, lh) * g(gh, lk)
                rhs = g(lh, lk) * g(lg, hk)
                if lhs != rhs:
                    ck.fail(f"group 2-cocycle identity fails at ({name((lg, lh, lk))})")
                    break


def verify_unitarity_suite(data, A, pairs, reporter, prefix="unitary"):
    """Conjugation laws of a unitary cocycle plus the exchange identities."""
    g, gb = data.gamma, data.gamma_bar

    def star_lab(l):
        return A.star(l)

    def s_star(l):
        # S(l)* as an element
        return A.star_elem(A.antipode(l))

    with reporter.check(f"{prefix}.gamma-conjugation", anchor="unitarity.gamma-conjugation") as ck:
        for a, b in pairs:
            lhs = g(a, b).conj()
            rhs = gb.on_elems(s_star(a), s_star(b))
            if lhs != rhs:
                ck.fail(f"conj gamma != gammabar(S*().,S*().) at ({A.label_name(a)},{A.label_name(b)})")
                break

    with reporter.check(f"{prefix}.gammabar-conjugation", anchor="unitarity.inverse-conjugation") as ck:
        for a, b in pairs:
            lhs = gb(a, b).conj()
            rhs = g.on_elems(s_star(a), s_star(b))
            if lhs != rhs:
                ck.fail(f"conj gammabar != gamma(S*().,S*().) at ({A.label_name(a)},{A.label_name(b)})")
                break

    labels = sorted({l for p in pairs for l in p})
    with reporter.check(f"{prefix}.vbar-conjugation", anchor="unitarity.vbar-v-conjugation") as ck:
        for l in labels:
            lhs = Cyc.zero(A.scalar_order)
            for l2, c in star_lab(l).terms.items():
                lhs = lhs + c.conj() * data.Vbar(l2)
            if lhs.conj() != data.V(l):
                ck.fail(f"conj Vbar(h*) != V(h) at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.u-ubar-inverse", anchor="twist.u-convolution-inverse") as ck:
        for l in labels:
            acc_l = Cyc.zero(A.scalar_order)
            acc_r = Cyc.zero(A.scalar_order)
            for (k1, k2), c in A.coproduct(l).terms.items():
                acc_l = acc_l + c * data.U(k1) * data.Ubar(k2)
                acc_r = acc_r + c * data.Ubar(k1) * data.U(k2)
            if acc_l != A.counit(l) or acc_r != A.counit(l):
                ck.fail(f"U*Ubar != counit at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.v-vbar-inverse", anchor="twist.v-convolution-inverse") as ck:
        for l in labels:
            acc_l = Cyc.zero(A.scalar_order)
            acc_r = Cyc.zero(A.scalar_order)
            for (k1, k2), c in A.coproduct(l).terms.items():
                acc_l = acc_l + c * data.V(k1) * data.Vbar(k2)
                acc_r = acc_r + c * data.Vbar(k1) * data.V(k2)
            if acc_l != A.counit(l) or acc_r != A.counit(l):
                ck.fail(f"V*Vbar != counit at {A.label_name(l)}")
                break

    def vbar_of_star(v):
        out = Cyc.zero(A.scalar_order)
        for l, c in v.terms.items():
            for l2, c2 in A.star(l).terms.items():
                out = out + c.conj() * c2 * data.Vbar(l2)
        return out

    with reporter.check(f"{prefix}.vbar-exchange", anchor="unitarity.vbar-exchange-identity") as ck:
        # Vbar(k1*) Vbar(h1*) gamma(k2* (x) h2*) = gammabar(S(h1)* (x) S(k1)*) Vbar(k2* h2*)
        for lh, lk in pairs:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (k1, k2), ckk in A.sweedler(lk, 2).terms.items():
                for (h1, h2), chh in A.sweedler(lh, 2).terms.items():
                    c = (ckk * chh).conj()
                    lhs = lhs + c * vbar_of_star(A.el(k1)) * vbar_of_star(A.el(h1)) \
                        * g.on_elems(A.star(k2), A.star(h2))
                    rhs = rhs + c * gb.on_elems(s_star(h1), s_star(k1)) \
                        * vbar_of_star(A.mult_elem(A.el(h2), A.el(k2)))
            if lhs != rhs:
                ck.fail(f"vbar exchange identity fails at ({A.label_name(lh)},{A.label_name(lk)})")
                break

    with reporter.check(f"{prefix}.vbar-merge", anchor="unitarity.vbar-merge-identity") as ck:
        # gamma(S(h1)* (x) S(k1)*) Vbar(k2*) Vbar(h2*) = Vbar(k1* h1*) gammabar(k2* (x) h2*)
        for lh, lk in pairs:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (k1, k2), ckk in A.sweedler(lk, 2).terms.items():
                for (h1, h2), chh in A.sweedler(lh, 2).terms.items():
                    c = (ckk * chh).conj()
                    lhs = lhs + c * g.on_elems(s_star(h1), s_star(k1)) \
                        * vbar_of_star(A.el(k2)) * vbar_of_star(A.el(h2))
                    rhs = rhs + c * vbar_of_star(A.mult_elem(A.el(h1), A.el(k1))) \
                        * gb.on_elems(A.star(k2), A.star(h2))
            if lhs != rhs:
                ck.fail(f"vbar merge identity fails at ({A.label_name(lh)},{A.label_name(lk)})")
                break

    with reporter.check(f"{prefix}.u-exchange", anchor="twist.u-exchange-identity") as ck:
        # U(h1) gammabar(S(h2) (x) k) = gamma(h1 (x) S(h2) k)
        for lh, lk in pairs:
            lhs = Cyc.zero(A.scalar_order)
            rhs = Cyc.zero(A.scalar_order)
            for (h1, h2), chh in A.sweedler(lh, 2).terms.items():
                lhs = lhs + chh * data.U(h1) * gb.on_elems(A.antipode(h2), A.el(lk))
                rhs = rhs + chh * g.on_elems(
                    A.el(h1), A.mult_elem(A.antipode(h2), A.el(lk)))
            if lhs != rhs:
                ck.fail(f"u exchange identity fails at ({A.label_name(lh)},{A.label_name(lk)})")
                break

    if A.is_grouplike_basis():
        # on a grouplike basis, unitarity is exactly pointwise unit modulus
        with reporter.check(f"{prefix}.modulus", anchor="unitarity.unit-modulus") as ck:
            one = Cyc.one(A.scalar_order)
            for a, b in pairs:
                v = g(a, b)
                if v * v.conj() != one:
                    ck.fail(f"|gamma| != 1 at ({A.label_name(a)},{A.label_name(b)})")
                    break
