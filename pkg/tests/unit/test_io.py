"""
MPF1 필드 파일 / CSV / JSON / 매니페스트 테스트
"""
import json

import numpy as np
import pytest

from core import __version__
from core.enums import PropagationModel, UnitSystem
from core.exceptions import CorruptPayloadError, FieldFileError, InvalidMagicError
from domain.entities.envelope import VectorEnvelope
from infrastructure.io.field_file import HEADER_KEYS, decode_field, encode_field, read_field, write_field
from infrastructure.io.manifest import MANIFEST_NAME, write_manifest
from infrastructure.io.table_writer import dumps_json, read_csv, rows_to_frame, to_jsonable, write_csv


def _split(data: bytes):
    """(매직 줄, 헤더 줄, payload)"""
    first = data.index(b"\n")
    second = data.index(b"\n", first + 1)
    return data[:first + 1], data[first + 1:second], data[second + 1:]


class TestFieldFile:
    """MPF1 코덱"""

    def test_scalar_round_trip_is_bit_exact(self, band_limited, tmp_path):
        tagged = band_limited.with_samples(band_limited.samples, z=2.5, t=-1.0, model=PropagationModel.EXACT)
        path = write_field(tmp_path / "field.mpf", tagged, UnitSystem.DIMENSIONLESS)
        header, restored = read_field(path)

        assert restored.samples.tobytes() == tagged.samples.tobytes()
        assert restored.grid == tagged.grid
        assert (restored.omega, restored.z, restored.t, restored.model) == (1.0, 2.5, -1.0, PropagationModel.EXACT)
        assert header["units"] == "dimensionless"

    def test_vector_round_trip(self, band_limited):
        vector = VectorEnvelope.from_components([band_limited, band_limited.with_samples(2j * band_limited.samples),
                                                 band_limited])
        _, restored = decode_field(encode_field(vector))
        assert isinstance(restored, VectorEnvelope)
        assert np.array_equal(restored.samples, vector.samples)

    def test_header_layout(self, band_limited):
        magic, header_line, payload = _split(encode_field(band_limited))
        assert magic == b"MPF1\n"
        header = json.loads(header_line)
        assert tuple(header) == HEADER_KEYS
        assert header["model"] is None
        assert header["units"] == "SI"
        assert len(payload) == 16 * 64 * 64

    def test_payload_is_little_endian_complex(self, band_limited):
        _, _, payload = _split(encode_field(band_limited))
        first = np.frombuffer(payload[:16], dtype="<f8")
        assert first[0] == band_limited.samples[0, 0].real
        assert first[1] == band_limited.samples[0, 0].imag

    def test_deterministic_bytes(self, band_limited):
        assert encode_field(band_limited) == encode_field(band_limited.with_samples(band_limited.samples))

    def test_bad_magic(self, band_limited):
        data = encode_field(band_limited)
        with pytest.raises(InvalidMagicError):
            decode_field(b"MPF2" + data[4:])

    def test_truncated_payload(self, band_limited):
        with pytest.raises(CorruptPayloadError) as exc:
            decode_field(encode_field(band_limited)[:-16])
        assert exc.value.details["expected"] - exc.value.details["actual"] == 16

    def test_bad_header_json(self):
        with pytest.raises(CorruptPayloadError):
            decode_field(b"MPF1\n{not json\n")

    def test_missing_header_line(self):
        with pytest.raises(CorruptPayloadError):
            decode_field(b"MPF1\n{}")

    def test_missing_header_keys(self):
        with pytest.raises(CorruptPayloadError) as exc:
            decode_field(b'MPF1\n{"nx":2}\n')
        assert "ny" in exc.value.details["missing"]

    def test_bad_component_count(self, band_limited):
        magic, header_line, payload = _split(encode_field(band_limited))
        header = json.loads(header_line)
        header["components"] = 2
        data = magic + json.dumps(header).encode() + b"\n" + payload
        with pytest.raises(CorruptPayloadError):
            decode_field(data)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FieldFileError):
            read_field(tmp_path / "absent.mpf")


class TestTables:
    """CSV / JSON 직렬화"""

    def test_to_jsonable(self):
        converted = to_jsonable({
            "complex": 1 + 2j,
            "nan": float("nan"),
            "inf": np.float64("-inf"),
            "model": PropagationModel.PARAXIAL,
            "array": np.array([1, 2]),
            "flag": np.bool_(True),
        })
        assert converted == {
            "complex": {"re": 1.0, "im": 2.0},
            "nan": "nan",
            "inf": "-inf",
            "model": "paraxial",
            "array": [1, 2],
            "flag": True,
        }

    def test_dumps_json_sorted(self):
        text = dumps_json({"b": 1, "a": 0.1})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_csv_round_trip(self, tmp_path):
        rows = [{"q": 0.1, "theta": 1 / 3}, {"q": 0.2, "theta": np.pi}]
        path = write_csv(tmp_path / "table.csv", rows_to_frame(rows, ["q", "theta"]))
        frame = read_csv(path)
        assert list(frame.columns) == ["q", "theta"]
        assert frame["theta"].tolist() == [1 / 3, np.pi]
        assert b"\r\n" not in path.read_bytes()


class TestManifest:
    """manifest.json"""

    def test_contents(self, tmp_path):
        path = write_manifest(tmp_path, "kernel", {"omega": 1.0}, "dimensionless", ["b.csv", "a.mpf"])
        assert path.name == MANIFEST_NAME
        manifest = json.loads(path.read_text(encoding="utf-8"))
        assert manifest == {
            "command": "kernel",
            "outputs": ["a.mpf", "b.csv"],
            "parameters": {"omega": 1.0},
            "units": "dimensionless",
            "version": __version__,
        }

    def test_rewrite_is_byte_identical(self, tmp_path):
        first = write_manifest(tmp_path, "selftest", {}, "SI").read_bytes()
        second = write_manifest(tmp_path, "selftest", {}, "SI").read_bytes()
        assert first == second
