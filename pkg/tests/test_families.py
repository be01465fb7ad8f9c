import pytest

from hadamard import families
from hadamard.convexity import Property, certify_2d
from hadamard.errors import UsageError
from hadamard.quad import Rect

REQUIRED = {"const", "affine", "square", "sumexp", "bilinear", "power-s", "sum-power", "mixed"}


def test_catalog_contents():
    assert REQUIRED <= {fam.name for fam in families.list_families()}


def _cases():
    for fam in families.list_families():
        param_sets = [None]
        if [p.name for p in fam.params] == ["p"]:
            param_sets += [[1.0], [0.3]]
        if fam.name == "affine":
            param_sets += [[-1.0, 0.5, 0.5]]  # negative somewhere on the square
        for params in param_sets:
            for decl in fam.declared(params):
                yield pytest.param(fam, params, decl, id=f"{fam.name}-{params}-{decl.prop.value}-{decl.holds}")


@pytest.mark.parametrize("fam, params, decl", list(_cases()))
def test_self_consistency(fam, params, decl):
    f = fam.instantiate(params)
    if decl.holds:
        s_values = [decl.s_max, decl.s_max / 2] if decl.prop.needs_s else [None]
        for s in s_values:
            assert certify_2d(f, fam.domain, decl.prop, s).passed
    else:
        s_values = [1.0, 0.5] if decl.prop.needs_s else [None]
        for s in s_values:
            cert = certify_2d(f, fam.domain, decl.prop, s)
            assert not cert.passed and cert.witness is not None


def test_spec_lookup_examples():
    unit = Rect(0, 1, 0, 1)
    bil = families.lookup("bilinear")
    assert bil.satisfies("coord-convex") is True
    assert bil.satisfies("convex-on-delta") is False
    assert certify_2d(bil.instantiate(), unit, "coord-convex").passed
    power = families.lookup("power-s")
    assert power.satisfies("coord-sconvex", 0.5, [0.5]) is True
    assert power.satisfies("coord-sconvex", 0.6, [0.5]) is None
    const = families.lookup("const")
    assert all(const.satisfies(p, 1.0, [1.0]) for p in Property if not p.is_1d)


def test_instantiate_examples():
    assert families.instantiate("power-s", [0.5])(0.25, 1) == 0.5
    assert families.instantiate("affine", [1, 1, 0])(0.2, 0.3) == 0.5
    with pytest.raises(UsageError):
        families.instantiate("nope", [])


@pytest.mark.parametrize("name, params", [("power-s", [0.0]), ("power-s", [1.5]), ("const", [-1]),
                                          ("affine", [1, 1]), ("square", [1.0])])
def test_bad_params(name, params):
    with pytest.raises(UsageError):
        families.instantiate(name, params)


def test_affine_s_properties_need_nonnegativity():
    fam = families.lookup("affine")
    assert fam.satisfies("coord-sconvex", 0.5, [1, 1, 0]) is True
    assert fam.satisfies("coord-sconvex", 0.5, [-1, 0, 0.5]) is None
