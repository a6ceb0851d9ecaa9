"""JSON verdict reports."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from src import __version__
from src.utils.config import AnalysisConfig

SCHEMA_VERSION = 1

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def build_report(command: str, digest: str, config: AnalysisConfig, results: Dict[str, Any]) -> Dict[str, Any]:
    """Report envelope: tool version, input hash, run parameters and the per-check results."""
    return {
        "schema": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "input_sha256": digest,
        "config": config.to_dict(),
        "results": _plain(results),
    }


def dumps(report: Dict[str, Any]) -> str:
    """Byte-stable serialization: sorted keys, fixed indentation."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_report(report: Dict[str, Any], out: Optional[str] = None) -> str:
    text = dumps(report)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"Report written to {path}")
    else:
        print(text, end="")
    return text


def read_report(path) -> Dict[str, Any]:
    return json.loads(Path(path).read_text())
