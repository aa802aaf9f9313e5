"""
MPQ MPF1 필드 파일 코덱

파일 구조:
- 매직 b"MPF1\\n"
- JSON 헤더 한 줄 (UTF-8, 키 정렬, 공백 없는 구분자, 개행 종료)
  {components, dx, dy, model, nx, ny, omega_or_k0, t, units, z}
- payload: little-endian complex128 (re, im 의 float64 쌍), 성분 → 행(y) → 열(x) 순서
  길이 = 16·nx·ny·components 바이트

같은 필드는 항상 같은 바이트로 기록 (타임스탬프 없음)
"""
import json
from pathlib import Path
from typing import Dict, Tuple, Union

import numpy as np

from core.enums import MPF1_MAGIC, PropagationModel, UnitSystem
from core.exceptions import CorruptPayloadError, FieldFileError, InvalidMagicError, InvalidParameterError
from domain.entities.envelope import ScalarEnvelope, VectorEnvelope
from domain.entities.grid import TransverseGrid
from utils.logger import get_logger

logger = get_logger(__name__)

Envelope = Union[ScalarEnvelope, VectorEnvelope]

PAYLOAD_DTYPE = np.dtype("<c16")
HEADER_KEYS = ("components", "dx", "dy", "model", "nx", "ny", "omega_or_k0", "t", "units", "z")


def build_header(envelope: Envelope, units: UnitSystem) -> Dict[str, object]:
    """포락선 메타데이터 → 헤더 dict"""
    grid = envelope.grid
    return {
        "components": envelope.components,
        "dx": float(grid.dx),
        "dy": float(grid.dy),
        "model": envelope.model.value if envelope.model is not None else None,
        "nx": grid.nx,
        "ny": grid.ny,
        "omega_or_k0": float(envelope.omega),
        "t": float(envelope.t),
        "units": UnitSystem(units).value,
        "z": float(envelope.z),
    }


def encode_field(envelope: Envelope, units: UnitSystem = UnitSystem.SI) -> bytes:
    """
    포락선을 MPF1 바이트열로 인코딩

    Args:
        envelope: 스칼라 또는 벡터 포락선
        units: 헤더에 기록할 단위계

    Returns:
        bytes: 매직 + 헤더 + payload
    """
    header = json.dumps(build_header(envelope, units), sort_keys=True, separators=(",", ":"))
    payload = np.ascontiguousarray(envelope.samples, dtype=PAYLOAD_DTYPE).tobytes(order="C")
    return MPF1_MAGIC + b"\n" + header.encode("utf-8") + b"\n" + payload


def decode_field(data: bytes) -> Tuple[Dict[str, object], Envelope]:
    """
    MPF1 바이트열 디코딩

    Returns:
        (헤더 dict, 포락선)

    Raises:
        InvalidMagicError: 매직 불일치
        CorruptPayloadError: 헤더 누락/손상 또는 payload 길이 불일치
    """
    prefix = MPF1_MAGIC + b"\n"
    if not data.startswith(prefix):
        raise InvalidMagicError("MPF1 매직이 아닙니다", {"prefix": data[:len(prefix)].hex()})

    end = data.find(b"\n", len(prefix))
    if end < 0:
        raise CorruptPayloadError("헤더 줄이 개행으로 끝나지 않습니다")
    try:
        header = json.loads(data[len(prefix):end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CorruptPayloadError("헤더 JSON 파싱 실패", {"error": str(e)}) from e

    missing = [key for key in HEADER_KEYS if key not in header]
    if missing:
        raise CorruptPayloadError("헤더 필드 누락", {"missing": missing})

    nx, ny, components = int(header["nx"]), int(header["ny"]), int(header["components"])
    if components not in (1, 3):
        raise CorruptPayloadError("components 는 1 또는 3 이어야 합니다", {"components": components})

    payload = data[end + 1:]
    expected = PAYLOAD_DTYPE.itemsize * nx * ny * components
    if len(payload) != expected:
        raise CorruptPayloadError(
            "payload 길이가 헤더와 맞지 않습니다",
            {"expected": expected, "actual": len(payload)}
        )

    try:
        grid = TransverseGrid(nx=nx, ny=ny, dx=float(header["dx"]), dy=float(header["dy"]))
    except InvalidParameterError as e:
        raise CorruptPayloadError("헤더의 격자 값이 유효하지 않습니다", e.details) from e
    samples = np.frombuffer(payload, dtype=PAYLOAD_DTYPE)
    tags = {
        "omega": float(header["omega_or_k0"]),
        "z": float(header["z"]),
        "t": float(header["t"]),
        "model": PropagationModel(header["model"]) if header["model"] is not None else None,
    }
    if components == 1:
        envelope = ScalarEnvelope(grid=grid, samples=samples.reshape(ny, nx), **tags)
    else:
        envelope = VectorEnvelope(grid=grid, samples=samples.reshape(3, ny, nx), **tags)
    return header, envelope


def write_field(path: Union[str, Path], envelope: Envelope,
                units: UnitSystem = UnitSystem.SI) -> Path:
    """
    MPF1 파일 쓰기

    Returns:
        Path: 기록한 경로
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = encode_field(envelope, units)
    path.write_bytes(data)
    logger.debug(f"MPF1 기록 | {path} ({len(data)} bytes, components={envelope.components})")
    return path


def read_field(path: Union[str, Path]) -> Tuple[Dict[str, object], Envelope]:
    """
    MPF1 파일 읽기

    Raises:
        FieldFileError: 파일 없음 / 매직 / payload 오류
    """
    path = Path(path)
    if not path.is_file():
        raise FieldFileError("필드 파일이 없습니다", {"path": str(path)})
    return decode_field(path.read_bytes())
