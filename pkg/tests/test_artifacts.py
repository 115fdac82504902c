import io
import json

import numpy as np
import pytest
from rich.console import Console

from rabibo.artifacts import Artifact, format_cell, to_csv, to_json, write_artifact
from rabibo.exceptions import ArtifactError
from rabibo.summarize import summarize


def artifact(**extras):
    return Artifact(
        command="spectrum",
        columns=("index", "energy_ed", "parity_ed"),
        rows=((0, -5.25, -1), (1, np.float64(0.1) + np.float64(0.2), 1)),
        extras=extras,
    )


class TestCells:
    def test_floats_keep_seventeen_digits(self):
        text = format_cell(0.1 + 0.2)
        assert text == "0.30000000000000004"
        assert float(text) == 0.1 + 0.2

    def test_other_values(self):
        assert format_cell(None) == ""
        assert format_cell(True) == "true"
        assert format_cell(np.int64(3)) == "3"
        assert format_cell("GUE") == "GUE"

    @pytest.mark.parametrize("value", [float("nan"), float("inf"), np.float64("-inf")])
    def test_non_finite_rejected(self, value):
        with pytest.raises(ArtifactError, match="non-finite"):
            format_cell(value)

    def test_separator_rejected(self):
        with pytest.raises(ArtifactError):
            format_cell("a,b")


class TestCsv:
    def test_layout(self):
        assert to_csv(artifact()) == (
            "index,energy_ed,parity_ed\n0,-5.25,-1\n1,0.30000000000000004,1\n"
        )

    def test_ragged_row(self):
        broken = Artifact(command="x", columns=("a", "b"), rows=((1,),))
        with pytest.raises(ArtifactError, match="1 cells for 2 columns"):
            to_csv(broken)


class TestJson:
    def test_document(self):
        document = json.loads(to_json(artifact(minima=[-1.5, 1.5]), {"command": "spectrum"}))
        assert document["meta"] == {"command": "spectrum"}
        assert document["data"]["rows"][1] == {"index": 1, "energy_ed": 0.1 + 0.2, "parity_ed": 1}
        assert document["data"]["minima"] == [-1.5, 1.5]

    def test_arrays_in_extras(self):
        document = json.loads(to_json(artifact(p=np.array([0.25, 0.75])), {}))
        assert document["data"]["p"] == [0.25, 0.75]

    def test_non_finite_extra(self):
        with pytest.raises(ArtifactError):
            to_json(artifact(bad=[np.nan]), {})


class TestWrite:
    def test_failed_write_leaves_nothing(self, tmp_path):
        path = tmp_path / "out.json"
        with pytest.raises(ArtifactError):
            write_artifact(artifact(bad=float("inf")), str(path), "json", {})
        assert list(tmp_path.iterdir()) == []

    def test_overwrites(self, tmp_path):
        path = tmp_path / "out.csv"
        path.write_text("old")
        write_artifact(artifact(), str(path), "csv", {})
        assert path.read_text().startswith("index,")
        assert [p.name for p in tmp_path.iterdir()] == ["out.csv"]


class TestSummarize:
    def test_table_and_extras(self):
        buffer = io.StringIO()
        console = Console(file=buffer, width=200, color_system=None)
        fits = {"ed": {"selected": "GUE"}}
        summarize(artifact(minima=[-3.9, 3.9], fits=fits), "spectrum.csv", console)
        text = buffer.getvalue()
        assert "spectrum -> spectrum.csv" in text
        assert "-5.25" in text
        assert "minima: [-3.9, 3.9]" in text
        assert "selected family (ed): GUE" in text
