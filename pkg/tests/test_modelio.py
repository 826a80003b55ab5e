import json
from fractions import Fraction
from pathlib import Path

import pytest

from divlat import corpus, modelio
from divlat.dualgraph import betti1
from divlat.errors import InputError, ModelError
from divlat.lattice import IntersectionLattice


def write_json(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data), encoding="utf-8")
    return p


LATTICE_DATA = {
    "kind": "lattice",
    "name": "toy",
    "primes": ["A", "B"],
    "matrix": [[-2, 1], [1, "-1/2"]],
    "ample": [1, "3/2"],
}


class TestLatticeFiles:
    def test_roundtrip(self, tmp_path):
        p = write_json(tmp_path, "toy.json", LATTICE_DATA)
        f = modelio.load_lattice(p)
        assert f.lattice.name == "toy"
        assert f.lattice.matrix[1][1] == Fraction(-1, 2)
        assert f.ample == f.lattice.divisor([1, "3/2"])
        again = modelio.lattice_to_data(f.lattice, f.ample)
        lat2, ample2 = modelio.lattice_from_data(again)
        assert lat2 == f.lattice and ample2 == f.ample

    def test_genus_canonical_smooth_survive(self):
        lat = IntersectionLattice(
            ("E",), [[-1]], genus=[0], canonical=[-1], smooth=True
        )
        data = modelio.lattice_to_data(lat)
        assert data["smooth"] is True
        lat2, _ = modelio.lattice_from_data(data)
        assert lat2 == lat and lat2.smooth and lat2.genus == (0,)

    def test_float_rejected(self, tmp_path):
        bad = dict(LATTICE_DATA, matrix=[[-2.0, 1], [1, -0.5]])
        p = write_json(tmp_path, "bad.json", bad)
        with pytest.raises(InputError, match="floats are not accepted"):
            modelio.load_lattice(p)

    def test_unknown_key_rejected(self):
        with pytest.raises(InputError, match="unknown keys: extra"):
            modelio.lattice_from_data(dict(LATTICE_DATA, extra=1))

    def test_missing_matrix(self):
        data = {k: v for k, v in LATTICE_DATA.items() if k != "matrix"}
        with pytest.raises(InputError, match="required"):
            modelio.lattice_from_data(data)

    def test_wrong_kind(self):
        with pytest.raises(InputError, match="kind must be 'lattice'"):
            modelio.lattice_from_data(dict(LATTICE_DATA, kind="resolution"))

    def test_ragged_matrix(self):
        with pytest.raises(InputError, match=r"matrix\[0\]"):
            modelio.lattice_from_data(dict(LATTICE_DATA, matrix=[[1], [1, 2]]))

    def test_bad_json(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{not json", encoding="utf-8")
        with pytest.raises(InputError, match="invalid JSON"):
            modelio.load_lattice(p)

    def test_top_level_not_object(self, tmp_path):
        p = write_json(tmp_path, "arr.json", [1, 2])
        with pytest.raises(InputError, match="JSON object"):
            modelio.load_lattice(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError, match="cannot read"):
            modelio.load_lattice(tmp_path / "nope.json")


class TestResolutionFiles:
    def base_data(self, upstairs):
        return {
            "kind": "resolution",
            "name": "blowup",
            "upstairs": upstairs,
            "downstairs": {"name": "plane", "primes": ["L"], "matrix": [[1]]},
            "exceptional": ["E"],
            "transform": {"L": "C"},
            "singclass": "smooth",
        }

    UPSTAIRS = {
        "kind": "lattice",
        "name": "blown",
        "primes": ["C", "E"],
        "matrix": [[0, 1], [1, -1]],
        "genus": [0, 0],
        "canonical": [-2, -1],
        "smooth": True,
    }

    def test_inline_upstairs_roundtrip(self, tmp_path):
        p = write_json(tmp_path, "res.json", self.base_data(self.UPSTAIRS))
        f = modelio.load_resolution(p)
        assert f.model.name == "blowup"
        assert f.singclass == "smooth"
        assert f.model.exceptional_primes() == ("E",)
        data = modelio.resolution_to_data(f)
        f2 = modelio.resolution_from_data(data, "res", None)
        assert f2.model.upstairs == f.model.upstairs
        assert f2.model.downstairs == f.model.downstairs
        assert f2.model.transform == f.model.transform

    def test_upstairs_by_reference(self, tmp_path):
        write_json(tmp_path, "up.json", self.UPSTAIRS)
        res = self.base_data("up.json")
        p = write_json(tmp_path, "res.json", res)
        f = modelio.load_resolution(p)
        assert f.model.upstairs.name == "blown"

    def test_dangling_reference_context(self, tmp_path):
        p = write_json(tmp_path, "res.json", self.base_data("missing.json"))
        with pytest.raises(InputError) as exc:
            modelio.load_resolution(p)
        assert "upstairs: reference 'missing.json' did not resolve" in str(exc.value)

    def test_derived_downstairs_matrix(self, tmp_path):
        res = self.base_data(self.UPSTAIRS)
        del res["downstairs"]["matrix"]
        p = write_json(tmp_path, "res.json", res)
        f = modelio.load_resolution(p)
        # L = C + E upstairs, L^2 = 0 + 2 - 1 = 1
        assert f.model.downstairs.matrix == ((Fraction(1),),)

    def test_corpus_reference_upstairs(self, tmp_path):
        res = self.base_data("corpus:l3_surface")
        res["downstairs"] = {"primes": ["C1", "C2"]}
        res["exceptional"] = ["C'3"]
        res["transform"] = {"C1": "C'1", "C2": "C'2"}
        res["singclass"] = "logterminal"
        p = write_json(tmp_path, "res.json", res)
        f = modelio.load_resolution(p)
        assert f.model.upstairs.name == "l3_surface"
        assert f.model.downstairs.matrix[0][0] == Fraction(-2, 3)

    def test_missing_required_key(self):
        data = self.base_data(self.UPSTAIRS)
        del data["transform"]
        with pytest.raises(InputError, match="'transform' is required"):
            modelio.resolution_from_data(data, "res", None)

    def test_transform_must_map_strings(self):
        data = self.base_data(self.UPSTAIRS)
        data["transform"] = {"L": 3}
        with pytest.raises(InputError, match="mapping prime names"):
            modelio.resolution_from_data(data, "res", None)

    def test_derivation_requires_negdef_exceptional(self):
        data = self.base_data(
            {"primes": ["C", "E"], "matrix": [[0, 1], [1, 1]]}
        )
        del data["downstairs"]["matrix"]
        with pytest.raises(ModelError):
            modelio.resolution_from_data(data, "res", None)


class TestDualGraphFiles:
    DATA = {
        "kind": "dualgraph",
        "name": "pair",
        "components": ["C1", "C2"],
        "singular_points": [
            {"name": "p", "branches": ["C1", "C2"]},
            {"name": "q", "branches": ["C1", "C2"]},
        ],
    }

    def test_roundtrip(self, tmp_path):
        p = write_json(tmp_path, "g.json", self.DATA)
        f = modelio.load_dualgraph(p)
        assert f.name == "pair"
        assert betti1(f.graph) == 1
        assert modelio.dualgraph_to_data(f) == self.DATA

    def test_branch_validation(self):
        bad = dict(self.DATA, singular_points=[{"name": "p", "branches": [1]}])
        with pytest.raises(InputError, match="list of strings"):
            modelio.dualgraph_from_data(bad, "g")

    def test_unknown_point_key(self):
        bad = dict(
            self.DATA,
            singular_points=[{"name": "p", "branches": ["C1"], "extra": 0}],
        )
        with pytest.raises(InputError, match="unknown keys"):
            modelio.dualgraph_from_data(bad, "g")


class TestLocateAndDispatch:
    def test_corpus_alias(self):
        path = modelio.locate("corpus:l2_surface")
        assert path == corpus.corpus_path("l2_surface")
        assert path.exists()

    def test_relative_base(self, tmp_path):
        p = write_json(tmp_path, "toy.json", LATTICE_DATA)
        assert modelio.locate("toy.json", tmp_path) == p
        assert modelio.locate(p, Path("/elsewhere")) == p  # absolute wins

    def test_unknown_corpus_name(self):
        with pytest.raises(InputError) as exc:
            modelio.locate("corpus:not_a_model")
        assert "not_a_model" in str(exc.value)
        # the message should help the caller find a valid name
        assert "l2_surface" in str(exc.value)

    def test_load_any_dispatch(self, tmp_path):
        lp = write_json(tmp_path, "l.json", LATTICE_DATA)
        gp = write_json(tmp_path, "g.json", TestDualGraphFiles.DATA)
        assert isinstance(modelio.load_any(lp), modelio.LatticeFile)
        assert isinstance(modelio.load_any(gp), modelio.DualGraphFile)
        assert isinstance(
            modelio.load_any("corpus:elliptic_resolution"), modelio.ResolutionFile
        )

    def test_load_any_unknown_kind(self, tmp_path):
        p = write_json(tmp_path, "x.json", {"kind": "mystery"})
        with pytest.raises(InputError, match="unknown model kind"):
            modelio.load_any(p)


class TestCorpus:
    def test_names_sorted_unique(self):
        names = corpus.corpus_names()
        assert list(names) == sorted(set(names))
        assert "l3_surface" in names and "elliptic_resolution" in names

    def test_every_corpus_file_loads(self):
        for name in corpus.corpus_names():
            model = modelio.load_any(f"corpus:{name}")
            assert model.path is not None

    def test_lattice_files_include_resolution_sides(self):
        lattices = corpus.corpus_lattices()
        names = {lat.name for lat in lattices}
        # upstairs and downstairs lattices of resolutions are included
        assert "l3_surface" in names and "l2_surface" in names
        assert len(names) == len(lattices)  # deduplicated

    def test_file_listings_cover_all_kinds(self):
        res = corpus.corpus_resolution_files()
        gra = corpus.corpus_dualgraph_files()
        lat = corpus.corpus_lattice_files()
        # lattice files include both sides of every resolution
        assert len(lat) == (len(corpus.corpus_names()) - len(res) - len(gra)) + 2 * len(res)
        standalone = {f.path for f in lat} - {f.path for f in res}
        assert all(p.endswith(".json") for p in standalone)
        assert not ({f.path for f in res} & {f.path for f in gra})
