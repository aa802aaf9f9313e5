"""MPQ core: 열거형, 예외, DTO"""

__version__ = "0.1.0"
