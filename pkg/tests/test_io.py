import numpy as np
import pytest

from conftest import benzene_points, diagram_of
from phtop import (
    DatasetManifest,
    InvalidInput,
    ParseError,
    PersistenceDiagram,
    featurize,
    parse_coords_csv,
    parse_xyz,
    read_diagram_json,
    write_diagram_json,
    write_features_csv,
)


def benzene_xyz():
    rows = "\n".join(
        f"{'C' if i < 6 else 'H'} {p[0]:.8f} {p[1]:.8f} {p[2]:.8f}"
        for i, p in enumerate(benzene_points())
    )
    return f"12\nbenzene, idealized\n{rows}\n"


class TestParseXyz:
    def test_single_atom(self):
        cloud = parse_xyz("1\n\nC 0.0 0.0 0.0\n")
        assert len(cloud) == 1
        assert cloud.points.tolist() == [[0.0, 0.0, 0.0]]
        assert cloud.labels == ("C",)

    def test_benzene_file(self):
        cloud = parse_xyz(benzene_xyz())
        assert len(cloud) == 12
        assert cloud.labels == ("C",) * 6 + ("H",) * 6
        assert cloud.comment == "benzene, idealized"

    def test_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_xyz("2\n\nC 0 0 0\n")
        with pytest.raises(ParseError):
            parse_xyz("1\n\nC 0 0 0\nH 1 0 0\n")

    def test_non_numeric_coordinate(self):
        with pytest.raises(ParseError) as err:
            parse_xyz("1\n\nC 0 zero 0\n")
        assert err.value.line == 3

    def test_empty_file(self):
        with pytest.raises(ParseError):
            parse_xyz("")
        with pytest.raises(ParseError):
            parse_xyz("   \n\n")

    def test_bad_count_line(self):
        with pytest.raises(ParseError) as err:
            parse_xyz("twelve\n\nC 0 0 0\n")
        assert err.value.line == 1

    def test_bytes_accepted(self):
        assert len(parse_xyz(b"1\n\nC 1 2 3\n")) == 1

    def test_wrong_field_count(self):
        with pytest.raises(ParseError):
            parse_xyz("1\n\nC 0 0\n")


class TestParseCoordsCsv:
    def test_with_header(self):
        cloud = parse_coords_csv("x,y,z\n0,0,0\n1,0,0\n")
        assert len(cloud) == 2
        assert cloud.points[1].tolist() == [1.0, 0.0, 0.0]

    def test_without_header(self):
        assert len(parse_coords_csv("0,0,0\n1,2,3\n")) == 2

    def test_two_fields_row(self):
        with pytest.raises(ParseError):
            parse_coords_csv("x,y,z\n0,0\n")

    def test_hundred_rows_in_order(self):
        rows = "\n".join(f"{i},0,0" for i in range(100))
        cloud = parse_coords_csv(rows)
        assert len(cloud) == 100
        assert np.array_equal(cloud.points[:, 0], np.arange(100.0))

    def test_header_only(self):
        with pytest.raises(ParseError):
            parse_coords_csv("x,y,z\n")


class TestDiagramJson:
    def test_empty_roundtrip(self):
        d = PersistenceDiagram([], [], [], essential_dropped=1)
        out = write_diagram_json(d)
        back = read_diagram_json(out)
        assert back == d
        assert write_diagram_json(back) == out

    def test_benzene_serializes_13_points(self, benzene_diagram):
        data = write_diagram_json(benzene_diagram)
        back = read_diagram_json(data)
        assert len(back) == 13
        assert back.count(0) == 11 and back.count(1) == 1 and back.count(2) == 1

    def test_roundtrip_is_byte_stable(self, benzene_diagram):
        once = write_diagram_json(benzene_diagram)
        twice = write_diagram_json(read_diagram_json(once))
        assert once == twice

    def test_roundtrip_precision(self, benzene_diagram):
        back = read_diagram_json(write_diagram_json(benzene_diagram))
        assert back.close_to(benzene_diagram, tol=1e-9)

    def test_missing_key(self):
        with pytest.raises(ParseError) as err:
            read_diagram_json(b'{"points": [], "essential_dropped": 0, "metadata": {}}')
        assert "homology_dimensions" in str(err.value)

    def test_wrong_type(self):
        with pytest.raises(ParseError) as err:
            read_diagram_json(
                b'{"homology_dimensions": [0, 1, 2], "points": [{"birth": "x", "death": 1, "dim": 0}],'
                b' "essential_dropped": 0, "metadata": {}}'
            )
        assert "points[0]" in str(err.value)

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            read_diagram_json(b"{nope")

    def test_metadata_preserved(self):
        d = PersistenceDiagram([0.0], [1.0], [0], 1, {"n_points": 2, "threshold": 1.0})
        back = read_diagram_json(write_diagram_json(d))
        assert back.metadata["n_points"] == 2
        assert back.metadata["threshold"] == 1.0


class TestFeaturesCsv:
    def test_paper18_columns(self, benzene_diagram):
        vec = featurize(benzene_diagram, 12)
        data = write_features_csv([("benzene", vec)]).decode()
        lines = data.splitlines()
        assert len(lines) == 2
        assert lines[0].split(",")[0] == "id"
        assert len(lines[0].split(",")) == 19

    def test_empty_rows_header_only(self):
        data = write_features_csv([]).decode()
        assert data == "id\n"

    def test_identical_inputs_identical_rows(self, benzene_diagram):
        vec = featurize(benzene_diagram, 12)
        data = write_features_csv([("a", vec), ("b", vec)]).decode()
        lines = data.splitlines()
        assert lines[1].split(",", 1)[1] == lines[2].split(",", 1)[1]

    def test_mixed_layouts_rejected(self, benzene_diagram):
        from phtop import ImageParams

        v18 = featurize(benzene_diagram, 12)
        vfull = featurize(benzene_diagram, 12, layout="full", params=ImageParams(resolution=2))
        with pytest.raises(InvalidInput):
            write_features_csv([("a", v18), ("b", vfull)])


class TestManifest:
    def test_load(self, tmp_path):
        (tmp_path / "a.xyz").write_text("1\n\nC 0 0 0\n")
        (tmp_path / "b.xyz").write_text("1\n\nC 1 0 0\n")
        mf = tmp_path / "manifest.csv"
        mf.write_text("id,path\nfirst,a.xyz\nsecond,b.xyz\n")
        manifest = DatasetManifest.load(mf)
        assert [rid for rid, _ in manifest.entries] == ["first", "second"]
        assert all(p.exists() for _, p in manifest.entries)

    def test_duplicate_ids(self, tmp_path):
        (tmp_path / "a.xyz").write_text("1\n\nC 0 0 0\n")
        mf = tmp_path / "manifest.csv"
        mf.write_text("x,a.xyz\nx,a.xyz\n")
        with pytest.raises(ParseError):
            DatasetManifest.load(mf)

    def test_missing_path(self, tmp_path):
        mf = tmp_path / "manifest.csv"
        mf.write_text("x,nope.xyz\n")
        with pytest.raises(ParseError):
            DatasetManifest.load(mf)


def test_xyz_parse_write_pipeline_roundtrip(tmp_path):
    # structure -> diagram json -> read -> identical bytes again
    cloud = parse_xyz(benzene_xyz())
    diag = diagram_of(cloud)
    blob = write_diagram_json(diag)
    assert write_diagram_json(read_diagram_json(blob)) == blob
