"""
MPQ 표/JSON 출력 모듈

- CSV: pandas DataFrame, 17 유효숫자 (float64 왕복 보장)
- JSON: 키 정렬, 들여쓰기 2, float 는 repr 정밀도
"""
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Union

import numpy as np
import pandas as pd

from utils.logger import get_logger

logger = get_logger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


def to_jsonable(value: Any) -> Any:
    """
    numpy / Enum / tuple 값을 JSON 직렬화 가능한 값으로 변환

    복소수는 {"re", "im"}, 비유한 float 는 문자열 ("nan", "inf", "-inf")
    """
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, Enum):
        return to_jsonable(value.value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(value.real)), "im": to_jsonable(float(value.imag))}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    return value


def dumps_json(payload: Any) -> str:
    """결정적 JSON 문자열 (개행 종료)"""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: Union[str, Path], payload: Any) -> Path:
    """JSON 파일 쓰기"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_json(payload), encoding="utf-8")
    logger.debug(f"JSON 기록 | {path}")
    return path


def rows_to_frame(rows: Sequence[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    """행 dict 목록 → 열 순서가 고정된 DataFrame"""
    return pd.DataFrame.from_records(list(rows), columns=columns)


def write_csv(path: Union[str, Path], frame: pd.DataFrame) -> Path:
    """
    CSV 쓰기 (인덱스 없음, 17 유효숫자, LF 줄바꿈)

    Returns:
        Path: 기록한 경로
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.debug(f"CSV 기록 | {path} ({len(frame)} rows)")
    return path


def read_csv(path: Union[str, Path]) -> pd.DataFrame:
    """write_csv 로 기록한 표 읽기 (왕복 정밀도 유지)"""
    return pd.read_csv(path, float_precision="round_trip")
