# shadowrca/infrastructure/storage/file_storage.py
"""
File system storage implementation
"""
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple

from shadowrca.application.interfaces.storage_provider import StorageProvider
from shadowrca.core.error_handling.errors import ParseError, StorageError
from shadowrca.monitoring.logging_config import get_logger
from shadowrca.utils.canonical_json import DEFAULT_DIGITS, dumps, dumps_line

logger = get_logger(__name__)


class FileStorage(StorageProvider):
    """File system storage writing canonical JSON"""

    def __init__(self, digits: int = DEFAULT_DIGITS):
        self.digits = digits

    def read_json(self, path: Path) -> Any:
        """Read a JSON document"""
        text = self._read_text(path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, path=str(path), line=e.lineno) from e

    def write_json(self, path: Path, data: Any) -> None:
        """Write a canonical JSON document"""
        self.write_text(path, dumps(data, self.digits))

    def read_jsonl(self, path: Path) -> Iterator[Tuple[int, Dict[str, Any]]]:
        """Yield (line number, record) pairs"""
        text = self._read_text(path)
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(e.msg, path=str(path), line=line_no) from e
            if not isinstance(record, dict):
                raise ParseError("expected a JSON object", path=str(path), line=line_no)
            yield line_no, record

    def write_jsonl(self, path: Path, records: Iterable[Dict[str, Any]]) -> None:
        """Write canonical JSON Lines"""
        self.write_text(path, "".join(dumps_line(r, self.digits) + "\n" for r in records))

    def write_text(self, path: Path, text: str) -> None:
        """Write text, creating parent directories"""
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        except OSError as e:
            logger.error("write_failed", path=str(path), error=str(e))
            raise StorageError(f"Cannot write {path}: {e.strerror or e}", path=str(path)) from e
        logger.debug("file_written", path=str(path), size=len(text))

    def exists(self, path: Path) -> bool:
        return Path(path).exists()

    def _read_text(self, path: Path) -> str:
        try:
            with open(path, "r", encoding="utf-8") as f:
                return f.read()
        except UnicodeDecodeError as e:
            raise ParseError("file is not valid UTF-8", path=str(path)) from e
        except OSError as e:
            logger.error("read_failed", path=str(path), error=str(e))
            raise StorageError(f"Cannot read {path}: {e.strerror or e}", path=str(path)) from e
