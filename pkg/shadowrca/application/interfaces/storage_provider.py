# shadowrca/application/interfaces/storage_provider.py
"""
Storage provider interface for documents and record streams
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple


class StorageProvider(ABC):
    """Interface for reading and writing JSON documents and JSON Lines files"""

    @abstractmethod
    def read_json(self, path: Path) -> Any:
        """Read one JSON document"""

    @abstractmethod
    def write_json(self, path: Path, data: Any) -> None:
        """Write one canonical JSON document"""

    @abstractmethod
    def read_jsonl(self, path: Path) -> Iterator[Tuple[int, Dict[str, Any]]]:
        """Yield (1-based line number, record) pairs, skipping blank lines"""

    @abstractmethod
    def write_jsonl(self, path: Path, records: Iterable[Dict[str, Any]]) -> None:
        """Write canonical JSON Lines"""

    @abstractmethod
    def write_text(self, path: Path, text: str) -> None:
        """Write a plain-text artifact"""

    @abstractmethod
    def exists(self, path: Path) -> bool:
        """Check if a path exists"""
