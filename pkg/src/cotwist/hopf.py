"""Hopf *-algebra presentations with finite Sweedler expansion.

Two instance families cover every model in the engine: group algebras of
finitely generated abelian groups (lattice labels, grouplike coproduct)
and function algebras of finite groups (delta labels, whose coproduct
forces genuinely multi-term Sweedler sums through every general formula).

All structure maps are tables on basis labels returning Vec linear
combinations; elements are Vec over labels.  Verification quantifies over
explicit finite label boxes since the lattice families are infinite.
"""

from __future__ import annotations

import itertools

from .cyclotomic import Cyc
from .vectors import Vec


class HopfAlgebra:
    """Base protocol: label tables for mult/unit/coproduct/counit/S/S^-1/star."""

    scalar_order = 1
    name = "hopf"

    def mult(self, l1, l2):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def coproduct(self, label):
        """Vec over pairs (l1, l2)."""
        raise NotImplementedError

    def counit(self, label):
        raise NotImplementedError

    def antipode(self, label):
        raise NotImplementedError

    def antipode_inv(self, label):
        raise NotImplementedError

    def star(self, label):
        raise NotImplementedError

    def label_name(self, label):
        return str(label)

    def finite_labels(self):
        """All labels for finite algebras, None for infinite families."""
        return None

    def labels_box(self, box):
        """Finite verification box of labels."""
        fin = self.finite_labels()
        if fin is not None:
            return list(fin)
        raise NotImplementedError

    def is_grouplike_basis(self):
        return False

    # -- element level (linear/antilinear extensions of the tables) -------

    def zero(self):
        return Vec(self.scalar_order)

    def el(self, label, coeff=1):
        return Vec.single(self.scalar_order, label, coeff)

    def mult_elem(self, v, w):
        out = Vec(self.scalar_order)
        for l1, c1 in v.terms.items():
            for l2, c2 in w.terms.items():
                for l3, c3 in self.mult(l1, l2).terms.items():
                    out.add_term(l3, c1 * c2 * c3)
        return out

    def counit_elem(self, v):
        out = Cyc.zero(self.scalar_order)
        for l, c in v.terms.items():
            out = out + c * self.counit(l)
        return out

    def star_elem(self, v):
        out = Vec(self.scalar_order)
        for l, c in v.terms.items():
            for l2, c2 in self.star(l).terms.items():
                out.add_term(l2, c.conj() * c2)
        return out

    def antipode_elem(self, v):
        return v.apply(self.antipode)

    def antipode_inv_elem(self, v):
        return v.apply(self.antipode_inv)

    def coproduct_elem(self, v):
        return v.apply(self.coproduct)

    def sweedler(self, v, legs):
        """Iterated coproduct of an element as a Vec over `legs`-tuples.

        Expands the last tensor slot repeatedly; coassociativity (checked
        separately) makes the bracketing immaterial.
        """
        if isinstance(v, tuple):
            v = self.el(v)
        out = v.map_keys(lambda l: (l,))
        while out.terms and len(next(iter(out.terms))) < legs:
            nxt = Vec(self.scalar_order)
            for key, c in out.terms.items():
                for (a, b), c2 in self.coproduct(key[-1]).terms.items():
                    nxt.add_term(key[:-1] + (a, b), c * c2)
            out = nxt
        return out

    def sweedler_first(self, v, legs):
        """Same as sweedler() but expanding the first slot (cross-check path)."""
        if isinstance(v, tuple):
            v = self.el(v)
        out = v.map_keys(lambda l: (l,))
        while out.terms and len(next(iter(out.terms))) < legs:
            nxt = Vec(self.scalar_order)
            for key, c in out.terms.items():
                for (a, b), c2 in self.coproduct(key[0]).terms.items():
                    nxt.add_term((a, b) + key[1:], c * c2)
            out = nxt
        return out


class GroupAlgebra(HopfAlgebra):
    """C[Z^r x Z_k1 x ... x Z_ks] with its compact-form *-structure.

    Labels are integer tuples (residues normalised in the finite slots);
    every basis label is grouplike, star and antipode both send a label to
    its inverse, which is what makes C[Z^2] the coordinate algebra of the
    2-torus.
    """

    def __init__(self, free_rank, torsion=(), scalar_order=1, name=None):
        from .vectors import memoize_table
        self.free_rank = free_rank
        self.torsion = tuple(torsion)
        self.rank = free_rank + len(self.torsion)
        self.scalar_order = scalar_order
        self.name = name or f"group({free_rank},{self.torsion})"
        self.mult = memoize_table(self.mult)
        self.coproduct = memoize_table(self.coproduct)

    def normalise(self, label):
        lab = list(label)
        for i, n in enumerate(self.torsion):
            lab[self.free_rank + i] %= n
        return tuple(lab)

    def _add(self, l1, l2):
        return self.normalise(tuple(a + b for a, b in zip(l1, l2)))

    def _neg(self, l):
        return self.normalise(tuple(-a for a in l))

    def mult(self, l1, l2):
        return self.el(self._add(l1, l2))

    def unit(self):
        return self.el((0,) * self.rank)

    def coproduct(self, label):
        return Vec.single(self.scalar_order, (label, label))

    def counit(self, label):
        return Cyc.one(self.scalar_order)

    def antipode(self, label):
        return self.el(self._neg(label))

    antipode_inv = antipode

    def star(self, label):
        return self.el(self._neg(label))

    def is_grouplike_basis(self):
        return True

    def finite_labels(self):
        if self.free_rank:
            return None
        return [tuple(lab) for lab in itertools.product(*[range(n) for n in self.torsion])]

    def labels_box(self, box):
        fin = self.finite_labels()
        if fin is not None:
            return fin
        free = list(itertools.product(*[range(-box, box + 1)] * self.free_rank))
        tors = list(itertools.product(*[range(n) for n in self.torsion]))
        return [f + t for f in free for t in tors]

    def label_name(self, label):
        return "u(" + ",".join(str(a) for a in label) + ")"


class Permutation(tuple):
    """A permutation of range(n) stored as its image tuple."""

    def __mul__(self, other):
        # (self*other)(i) = self(other(i))
        return Permutation(self[o] for o in other)

    def inv(self):
        out = [0] * len(self)
        for i, v in enumerate(self):
            out[v] = i
        return Permutation(out)


def symmetric_group(n):
    return [Permutation(p) for p in itertools.permutations(range(n))]


class FunctionAlgebra(HopfAlgebra):
    """Functions on a finite group: delta-function labels, pointwise product.

    The coproduct sums over factorisations, so Sweedler legs are genuinely
    multi-term; the unit is the sum of all deltas.
    """

    def __init__(self, elements, scalar_order=1, name="fun"):
        from .vectors import memoize_table
        self.elements = list(elements)
        self.identity = next(g for g in self.elements if g == g * g)
        self.scalar_order = scalar_order
        self.name = name
        self._factorisations = {}
        for g in self.elements:
            self._factorisations[g] = [(h, h.inv() * g) for h in self.elements]
        self.mult = memoize_table(self.mult)
        self.coproduct = memoize_table(self.coproduct)
        self.unit = memoize_table(self.unit)

    def mult(self, l1, l2):
        if l1 == l2:
            return self.el(l1)
        return self.zero()

    def unit(self):
        v = Vec(self.scalar_order)
        for g in self.elements:
            v.add_term(g, 1)
        return v

    def coproduct(self, label):
        v = Vec(self.scalar_order)
        for h, k in self._factorisations[label]:
            v.add_term((h, k), 1)
        return v

    def counit(self, label):
        if label == self.identity:
            return Cyc.one(self.scalar_order)
        return Cyc.zero(self.scalar_order)

    def antipode(self, label):
        return self.el(label.inv())

    antipode_inv = antipode

    def star(self, label):
        return self.el(label)

    def finite_labels(self):
        return list(self.elements)

    def label_name(self, label):
        return "d[" + "".join(str(i) for i in label) + "]"


def fun_s3(scalar_order=1):
    return FunctionAlgebra(symmetric_group(3), scalar_order, name="fun(S3)")


# -- axiom verification -----------------------------------------------------


def _tensor_mult(A, v, w, legs_v, legs_w):
    """Componentwise product of Vec over label tuples (A^{tensor n})."""
    out = Vec(A.scalar_order)
    for k1, c1 in v.terms.items():
        for k2, c2 in w.terms.items():
            parts = Vec.single(A.scalar_order, (), c1 * c2)
            for a, b in zip(k1, k2):
                nxt = Vec(A.scalar_order)
                prod = A.mult(a, b)
                for key, c in parts.terms.items():
                    for l, cl in prod.terms.items():
                        nxt.add_term(key + (l,), c * cl)
                parts = nxt
            for key, c in parts.terms.items():
                out.add_term(key, c)
    return out


def verify_hopf_axioms(A, labels, reporter, prefix="hopf", pair_samples=None):
    """Run the Hopf *-algebra axiom suite over a finite label box.

    Checks multiplicativity-side axioms on sampled pairs/triples and the
    comultiplication-side axioms on every boxed label.  Failures are
    recorded with a witness, never raised.
    """
    labels = list(labels)
    pairs = pair_samples if pair_samples is not None else [
        (a, b) for a in labels for b in labels]

    def el(l):
        return A.el(l)

    with reporter.check(f"{prefix}.coassociativity", anchor="coproduct.coassociativity") as ck:
        for l in labels:
            lhs = A.sweedler(l, 3)
            rhs = A.sweedler_first(l, 3)
            if lhs != rhs:
                ck.fail(f"coassociativity fails at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.counit-collapse", anchor="counit.left-right-law") as ck:
        for l in labels:
            cp = A.coproduct(l)
            left = Vec(A.scalar_order)
            right = Vec(A.scalar_order)
            for (a, b), c in cp.terms.items():
                left.add_term(b, c * A.counit(a))
                right.add_term(a, c * A.counit(b))
            if left != el(l) or right != el(l):
                ck.fail(f"counit law fails at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.antipode-convolution", anchor="antipode.convolution-law") as ck:
        for l in labels:
            cp = A.coproduct(l)
            left = Vec(A.scalar_order)
            right = Vec(A.scalar_order)
            for (a, b), c in cp.terms.items():
                left = left + A.mult_elem(A.antipode(a), el(b)).scale(c)
                right = right + A.mult_elem(el(a), A.antipode(b)).scale(c)
            target = A.unit().scale(A.counit(l))
            if left != target or right != target:
                ck.fail(f"antipode convolution law fails at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.antipode-bijective", anchor="antipode.bijectivity") as ck:
        for l in labels:
            v = el(l)
            if A.antipode_inv_elem(A.antipode_elem(v)) != v or \
               A.antipode_elem(A.antipode_inv_elem(v)) != v:
                ck.fail(f"S^-1 fails at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.coproduct-star-hom", anchor="coproduct.star-homomorphism") as ck:
        for l in labels:
            sv = A.star(l)
            lhs = Vec(A.scalar_order)
            for l2, c2 in sv.terms.items():
                for key, c in A.coproduct(l2).terms.items():
                    lhs.add_term(key, c2 * c)
            rhs = Vec(A.scalar_order)
            for (a, b), c in A.coproduct(l).terms.items():
                for a2, ca in A.star(a).terms.items():
                    for b2, cb in A.star(b).terms.items():
                        rhs.add_term((a2, b2), c.conj() * ca * cb)
            if lhs != rhs:
                ck.fail(f"Delta(a*) != (*x*)Delta(a) at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.star-squared-antipode", anchor="antipode.star-square-identity") as ck:
        for l in labels:
            v = el(l)
            w = A.star_elem(A.antipode_elem(A.star_elem(v)))
            if A.antipode_elem(w) != v:
                ck.fail(f"S(S(a*)*) != a at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.associativity", anchor="plumbing") as ck:
        for a, b in pairs[: len(labels) ** 2]:
            for c in labels[:3]:
                lhs = A.mult_elem(A.mult_elem(el(a), el(b)), el(c))
                rhs = A.mult_elem(el(a), A.mult_elem(el(b), el(c)))
                if lhs != rhs:
                    ck.fail(f"associativity fails at ({A.label_name(a)},{A.label_name(b)},{A.label_name(c)})")
                    break
            else:
                continue
            break

    with reporter.check(f"{prefix}.unit-law", anchor="plumbing") as ck:
        one = A.unit()
        for l in labels:
            v = el(l)
            if A.mult_elem(one, v) != v or A.mult_elem(v, one) != v:
                ck.fail(f"unit law fails at {A.label_name(l)}")
                break

    with reporter.check(f"{prefix}.coproduct-algebra-map", anchor="bialgebra.compatibility") as ck:
        for a, b in pairs:
            lhs = A.coproduct_elem(A.mult_elem(el(a), el(b)))
            rhs = _tensor_mult(A, A.coproduct(a), A.coproduct(b), 2, 2)
            if lhs != rhs:
                ck.fail(f"Delta not multiplicative at ({A.label_name(a)},{A.label_name(b)})")
                break

    with reporter.check(f"{prefix}.star-antimultiplicative", anchor="plumbing") as ck:
        for a, b in pairs:
            lhs = A.star_elem(A.mult_elem(el(a), el(b)))
            rhs = A.mult_elem(A.star_elem(el(b)), A.star_elem(el(a)))
            if lhs != rhs or A.star_elem(A.star_elem(el(a))) != el(a):
                ck.fail(f"* not an antimultiplicative involution at ({A.label_name(a)},{A.label_name(b)})")
                break


def verify_cocommutative_flip(A, labels, reporter, prefix="hopf"):
    with reporter.check(f"{prefix}.cocommutative-flip", anchor="coproduct.cocommutativity") as ck:
        for l in labels:
            cp = A.coproduct(l)
            flip = cp.map_keys(lambda k: (k[1], k[0]))
            if cp != flip:
                ck.fail(f"flip.Delta != Delta at {A.label_name(l)}")
                break
