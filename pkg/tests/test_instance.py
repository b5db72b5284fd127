import json

import pytest

from coringlab.instance import InstanceError, build_context, fixture_paths, load_instance


def write(tmp_path, data, name="inst.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return p


BASE = {
    "field": {"kind": "prime", "p": 2},
    "algebra": {"preset": "dual_numbers"},
    "hopf": {"variant": "group", "group": {"preset": "Z"}},
    "coaction": {"degrees": [0, 1]},
}


def test_fixture_corpus_loads():
    names = [p.stem for p in fixture_paths()]
    assert len(names) >= 6
    for p in fixture_paths():
        inst = load_instance(p)
        assert inst.name == p.stem
        assert len(inst.sha256) == 64


def test_f4_fixture(load):
    ctx = load("f4_frobenius").ctx
    assert ctx.hopf.is_dual and ctx.hopf.group.order == 2
    assert ctx.algebra.dim == 2 and ctx.field.p == 2


def test_dual_numbers_fixture(load):
    inst = load("dualnumbers_graded")
    assert inst.ctx.is_graded and not inst.ctx.hopf.is_finite
    assert inst.ctx.coaction.degrees == (0, 1)
    assert inst.window == (-3, 3) and inst.cap == 4096


def test_bounds_override(tmp_path):
    inst = load_instance(write(tmp_path, {**BASE, "bounds": {"window": [-1, 2], "cap": 99}}))
    assert inst.window == (-1, 2) and inst.cap == 99


def test_malformed_degrees_name_the_structure_constant(tmp_path):
    bad = {**BASE, "algebra": {"preset": "poly_quotient", "modulus": [1, 0, 1]}}
    with pytest.raises(InstanceError) as err:
        load_instance(write(tmp_path, bad))
    assert err.value.where == "coaction.degrees"
    assert "homogeneity" in str(err.value) and "c_{11}^0" in str(err.value)


def test_parse_error_has_line_and_column(tmp_path):
    with pytest.raises(InstanceError) as err:
        load_instance(write(tmp_path, '{\n  "field": {"kind": "prime", "p": 2},\n  oops\n}'))
    assert err.value.where == "inst.json:3:3"


@pytest.mark.parametrize("patch, where", [
    ({"field": {"kind": "reals"}}, "field.kind"),
    ({"field": {"kind": "prime", "p": 4}}, "field"),
    ({"algebra": {"preset": "lie"}}, "algebra.preset"),
    ({"algebra": {"preset": "fp_field_ext", "modulus": [1, 0, 1]}}, "algebra"),
    ({"algebra": {"basis": ["1", "x"], "mult": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]], "unit": [1, 0]}},
     "algebra.mult"),
    ({"hopf": {"variant": "dual", "group": {"preset": "Z"}}}, "hopf"),
    ({"hopf": {"variant": "free", "group": {"preset": "Z"}}}, "hopf.variant"),
    ({"coaction": {"degrees": [0]}}, "coaction"),
    ({"coaction": {}}, "coaction"),
])
def test_located_diagnostics(tmp_path, patch, where):
    with pytest.raises(InstanceError) as err:
        load_instance(write(tmp_path, {**BASE, **patch}))
    assert err.value.where == where


def test_missing_section():
    with pytest.raises(InstanceError) as err:
        build_context({k: v for k, v in BASE.items() if k != "hopf"})
    assert "hopf" in str(err.value)


def test_bad_action_names_the_pair():
    raw = {**BASE, "algebra": {"preset": "product_of_fields", "n": 2},
           "hopf": {"variant": "dual", "group": {"preset": "cyclic", "n": 2}},
           "coaction": {"action": [[[1, 0], [0, 1]], [[1, 1], [0, 1]]]}}
    with pytest.raises(InstanceError) as err:
        build_context(raw)
    assert err.value.where == "coaction.action"


def test_raw_structure_constants_and_group_table():
    raw = {
        "field": {"kind": "prime", "p": 3},
        "algebra": {"basis": ["1", "x"], "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "unit": [1, 0]},
        "hopf": {"variant": "group", "group": {"table": [[0, 1], [1, 0]], "identity": 0}},
        "coaction": {"degrees": [0, 1]},
    }
    ctx = build_context(raw)
    assert ctx.algebra.names == ("1", "x") and ctx.hopf.group.order == 2


def test_product_group_preset():
    raw = {**BASE, "algebra": {"preset": "field"},
           "hopf": {"variant": "dual", "group": {"preset": "product", "factors": [
               {"preset": "cyclic", "n": 2}, {"preset": "cyclic", "n": 2}]}},
           "coaction": {"trivial": True}}
    assert build_context(raw).hopf.group.order == 4
