import csv
import io
import json
import math
import os
import sys
from abc import ABC, abstractmethod


class ArtifactWriter(ABC):
    @abstractmethod
    def write(self, path: str, data: bytes) -> None:
        """Write the data to the artifact at path.

        Args:
            path (str): the target artifact name
            data (bytes): the data to write
        """
        pass

    def write_string(self, path: str, data: str) -> None:
        self.write(path, data.encode('utf-8'))

    def write_json(self, path: str, obj) -> None:
        self.write_string(path, format_json(obj))

    def write_csv(self, path: str, columns, rows, header: dict = None) -> None:
        self.write_string(path, format_csv(columns, rows, header))


class FileArtifactWriter(ArtifactWriter):
    def __init__(self, parent_dir: str = '') -> None:
        """Initialized with parent_dir.

        Args:
            parent_dir (str, optional): relative paths are joined with it. Defaults to ''.
        """
        self._parent_dir = parent_dir

    def write(self, path: str, data: bytes) -> None:
        fn_path = path
        if not os.path.isabs(fn_path) and len(self._parent_dir) > 0:
            fn_path = os.path.join(self._parent_dir, path)

        if not os.path.exists(os.path.dirname(fn_path)) and os.path.dirname(fn_path) != '':
            os.makedirs(os.path.dirname(fn_path), exist_ok=True)

        with open(fn_path, 'wb') as f:
            f.write(data)


class StreamArtifactWriter(ArtifactWriter):
    """Writes every artifact to one text stream, stdout by default; paths are ignored."""

    def __init__(self, stream=None) -> None:
        self._stream = stream

    def write(self, path: str, data: bytes) -> None:
        stream = self._stream or sys.stdout
        stream.write(data.decode('utf-8'))
        stream.flush()


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        return format(value, '.17g')
    if value is None:
        return ''
    return str(value)


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, 'item') and callable(obj.item):
        return _jsonable(obj.item())
    return obj


def format_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def format_csv(columns, rows, header: dict = None) -> str:
    """CSV text with ``# key=value`` comment lines before the column row."""
    buffer = io.StringIO()
    for key, value in (header or {}).items():
        buffer.write(f'# {key}={format_value(value)}\n')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()
