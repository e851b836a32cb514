import json

import pytest

from secatm.modelfile import (
    ModelFileError,
    load_model_file,
    parse_model,
    parse_mrange,
)


def base_doc(**overrides):
    doc = {
        "schema": "secatm-model/1",
        "coeff": "Q",
        "spaces": {"s2": {"construct": "sphere", "n": 2}},
    }
    doc.update(overrides)
    return doc


U2_DOC = {
    "schema": "secatm-model/1",
    "coeff": "Z",
    "spaces": {
        "s1": {"construct": "sphere", "n": 1},
        "s3": {"construct": "sphere", "n": 3},
        "u2": {
            "construct": "product",
            "factors": ["s1", "s3"],
            "h_space_with_division": True,
        },
    },
    "map_pairs": {
        "idinv": {
            "domain": "u2",
            "codomain": "u2",
            "fstar": {"kind": "identity"},
            "gstar": {
                "kind": "images",
                "images": {
                    "a(x)1": {"a(x)1": -1},
                    "1(x)a": {"1(x)a": -1},
                    "a(x)a": {"a(x)a": 1},
                },
            },
        }
    },
    "queries": [{"target": "idinv", "invariant": "dm", "m": "1..4"}],
}


class TestParsing:
    def test_constructor_space(self):
        loaded = parse_model(base_doc())
        assert loaded.bundle.spaces["s2"].hdim == 2

    def test_unitary_group_document(self):
        loaded = parse_model(U2_DOC)
        u2 = loaded.bundle.spaces["u2"]
        assert u2.h_space_with_division
        assert len(loaded.bundle.map_pairs) == 1
        assert loaded.queries[0].ms == [1, 2, 3, 4]

    def test_explicit_algebra_space(self):
        doc = base_doc(
            spaces={
                "ext": {
                    "algebra": {
                        "coeff": "Z",
                        "basis": {"0": ["1"], "1": ["x1"], "3": ["x3"], "4": ["x1x3"]},
                        "products": [["x1", "x3", {"x1x3": 1}]],
                    },
                    "conn": 0,
                    "hdim": 4,
                }
            }
        )
        loaded = parse_model(doc)
        alg = loaded.bundle.spaces["ext"].algebra
        x1, x3 = alg.basis_element("x1"), alg.basis_element("x3")
        assert (x3 * x1) == -alg.basis_element("x1x3")

    def test_coeff_override(self):
        loaded = parse_model(base_doc(), coeff_override="F2")
        assert loaded.bundle.spaces["s2"].algebra.coeff.label == "F2"

    def test_fibration_with_named_total(self):
        doc = {
            "schema": "secatm-model/1",
            "coeff": "F2",
            "spaces": {
                "rp3": {"construct": "real_projective", "n": 3},
                "s3": {"construct": "sphere", "n": 3},
            },
            "fibrations": {
                "cover": {
                    "base": "rp3",
                    "total": "s3",
                    "pstar": {"kind": "augmentation"},
                    "fiber_pi_vanish_from": 1,
                }
            },
        }
        loaded = parse_model(doc)
        assert loaded.bundle.fibrations["cover"].fiber_pi_vanish_from == 1


class TestDiagnostics:
    def test_bad_schema(self):
        with pytest.raises(ModelFileError) as err:
            parse_model({"schema": "nope"})
        assert err.value.path == "schema"

    def test_unknown_constructor(self):
        with pytest.raises(ModelFileError) as err:
            parse_model(base_doc(spaces={"x": {"construct": "torus"}}))
        assert "spaces.x" in str(err.value)

    def test_sign_violation_names_the_pair(self):
        doc = base_doc(
            spaces={
                "bad": {
                    "algebra": {
                        "basis": {"0": ["1"], "1": ["x", "y"], "2": ["u"]},
                        "products": [
                            ["x", "y", {"u": 1}],
                            ["y", "x", {"u": 1}],
                        ],
                    }
                }
            }
        )
        with pytest.raises(ModelFileError) as err:
            parse_model(doc)
        assert "'x'" in str(err.value) and "'y'" in str(err.value)

    def test_non_multiplicative_morphism_is_diagnosed(self):
        doc = dict(U2_DOC)
        doc = json.loads(json.dumps(U2_DOC))  # deep copy
        del doc["map_pairs"]["idinv"]["gstar"]["images"]["a(x)a"]
        with pytest.raises(ModelFileError) as err:
            parse_model(doc)
        assert "multiplicative" in str(err.value)
        assert "gstar" in err.value.path

    def test_unknown_factor_reference(self):
        doc = base_doc(
            spaces={"p": {"construct": "product", "factors": ["s2", "nope"]}}
        )
        with pytest.raises(ModelFileError):
            parse_model(doc)

    def test_circular_reference(self):
        doc = base_doc(
            spaces={"p": {"construct": "product", "factors": ["p", "p"]}}
        )
        with pytest.raises(ModelFileError) as err:
            parse_model(doc)
        assert "circular" in str(err.value)

    def test_duplicate_names_across_kinds(self):
        doc = base_doc()
        doc["fibrations"] = {
            "s2": {
                "base": "s2",
                "total": "s2",
                "pstar": {"kind": "identity"},
            }
        }
        with pytest.raises(ModelFileError) as err:
            parse_model(doc)
        assert "duplicate" in str(err.value)

    def test_query_validation(self):
        doc = base_doc(queries=[{"target": "s2", "invariant": "secat"}])
        with pytest.raises(ModelFileError) as err:
            parse_model(doc)
        assert "no fibration" in str(err.value)

    def test_mrange_parsing(self):
        assert parse_mrange("3") == [3]
        assert parse_mrange("1..4") == [1, 2, 3, 4]
        with pytest.raises(ModelFileError):
            parse_mrange("0..2")
        with pytest.raises(ModelFileError):
            parse_mrange("x")


class TestFileLoading:
    def test_round_trip_through_disk(self, tmp_path):
        path = tmp_path / "u2.json"
        path.write_text(json.dumps(U2_DOC))
        loaded = load_model_file(str(path))
        assert "u2" in loaded.bundle.spaces

    def test_missing_file(self):
        with pytest.raises(ModelFileError):
            load_model_file("/nonexistent/model.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ModelFileError):
            load_model_file(str(path))
