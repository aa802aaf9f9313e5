"""
MPQ 실행 매니페스트

모든 CLI 실행이 출력 디렉토리에 manifest.json 을 남김
명령, 해석된 파라미터, 라이브러리 버전, 단위계, 출력 파일 목록
타임스탬프는 넣지 않음 (재실행 시 바이트 동일)
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from core import __version__
from infrastructure.io.table_writer import write_json

MANIFEST_NAME = "manifest.json"


def build_manifest(command: str, parameters: Dict[str, Any], units: str,
                   outputs: Optional[List[str]] = None) -> Dict[str, Any]:
    """매니페스트 dict 생성"""
    return {
        "command": command,
        "outputs": sorted(outputs or []),
        "parameters": parameters,
        "units": units,
        "version": __version__,
    }


def write_manifest(output_dir: Union[str, Path], command: str, parameters: Dict[str, Any],
                   units: str, outputs: Optional[List[str]] = None) -> Path:
    """output_dir/manifest.json 기록"""
    manifest = build_manifest(command, parameters, units, outputs)
    return write_json(Path(output_dir) / MANIFEST_NAME, manifest)
