"""Model bundles: determinism, degenerate parameters, correspondence loops."""

import pytest

from cotwist.emit import emit_json, structure_tables
from cotwist.models import (
    build_model, classical_torus, correspondence_roundtrips, finite_bicharacter,
    fun_group, nc_torus, twist_world, untwist_world)


def emit_bundle(b):
    return emit_json(structure_tables(
        b.hopf, b.comodule, b.calculus, b.metric, b.connection, b.hermitian))


def emit_world(w):
    return emit_json(structure_tables(
        w.hopf, w.comodule, w.calculus, w.metric, w.connection, w.hermitian))


def test_determinism_bit_identical():
    a = emit_world(twist_world(nc_torus(1, 3)))
    b = emit_world(twist_world(nc_torus(1, 3)))
    assert a == b


def test_nc_torus_p0_equals_classical():
    flat = nc_torus(0, 3)
    classical = classical_torus(order=flat.hopf.scalar_order)
    assert emit_bundle(flat) == emit_bundle(classical)
    assert emit_world(twist_world(flat)) == emit_bundle(classical)


def test_nc_torus_reduces_fraction():
    assert nc_torus(2, 6).hopf.scalar_order == nc_torus(1, 3).hopf.scalar_order


def test_invalid_parameters():
    with pytest.raises(ValueError):
        nc_torus(1, 0)
    with pytest.raises(ValueError):
        fun_group("z17")
    with pytest.raises(ValueError):
        build_model("nonsense")


def test_twist_roundtrip_emission():
    b = nc_torus(1, 3)
    world = twist_world(b)
    back = untwist_world(b, world)
    assert emit_world(back) == emit_bundle(b)


def test_twisted_commutation_in_emission():
    import json
    from cotwist.cyclotomic import Cyc, format_scalar
    b = nc_torus(1, 3)
    world = twist_world(b)
    doc = json.loads(emit_world(world))
    xy = doc["product"]["u(1,0)|u(0,1)"]
    yx = doc["product"]["u(0,1)|u(1,0)"]
    assert xy == [{"coeff": format_scalar(Cyc.root(3, 2).embed(12)),
                   "monomial": "u(1,1)"}]
    assert yx == [{"coeff": format_scalar(Cyc.root(3, 1).embed(12)),
                   "monomial": "u(1,1)"}]


def test_correspondence_roundtrips_pass():
    rep = correspondence_roundtrips(nc_torus(1, 3))
    assert rep.passed, rep.to_text()
    assert len(rep.checks) == 4


def test_correspondence_roundtrips_catch_fault():
    from cotwist.faults import fault_pairing_corrupted
    rep = correspondence_roundtrips(fault_pairing_corrupted())
    assert not rep.passed


def test_finite_models_have_no_geometry():
    b = finite_bicharacter(5)
    assert b.calculus is None
    assert not b.is_geometric()
    assert b.twisted_hopf is not None
    g = fun_group("s3")
    assert g.data.is_trivial()
