from .field_file import decode_field, encode_field, read_field, write_field
from .manifest import write_manifest
from .table_writer import read_csv, write_csv, write_json

__all__ = [
    "decode_field",
    "encode_field",
    "read_field",
    "write_field",
    "write_manifest",
    "read_csv",
    "write_csv",
    "write_json",
]
