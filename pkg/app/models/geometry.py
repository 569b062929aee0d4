"""
Pydantic models describing haar feature geometry.
"""
from enum import IntEnum
from typing import Tuple

from pydantic import BaseModel, Field


class HaarType(IntEnum):
    """
    The five haar feature types, indexed in search order.
    """
    EDGE_H = 0
    EDGE_V = 1
    LINE_H = 2
    LINE_V = 3
    CHECKER = 4

    @property
    def tag(self) -> str:
        """Short name used in model files and reports."""
        return _TAGS[self]

    @property
    def divisors(self) -> Tuple[int, int]:
        """(width divisor, height divisor) a valid geometry must respect."""
        return _DIVISORS[self]

    @classmethod
    def from_tag(cls, tag) -> "HaarType":
        """
        Resolve a feature type from its tag, enum name or integer index.

        Args:
            tag: "EdgeH", "EDGE_H", 0, ...

        Returns:
            The matching HaarType
        """
        if isinstance(tag, HaarType):
            return tag
        if isinstance(tag, int):
            return cls(tag)
        text = str(tag).strip()
        for member in cls:
            if text in (member.tag, member.name) or text == str(int(member)):
                return member
        raise ValueError(f"unknown haar feature type: {tag!r}")


_TAGS = {
    HaarType.EDGE_H: "EdgeH",
    HaarType.EDGE_V: "EdgeV",
    HaarType.LINE_H: "LineH",
    HaarType.LINE_V: "LineV",
    HaarType.CHECKER: "Checker",
}

_DIVISORS = {
    HaarType.EDGE_H: (2, 1),
    HaarType.EDGE_V: (1, 2),
    HaarType.LINE_H: (3, 1),
    HaarType.LINE_V: (1, 3),
    HaarType.CHECKER: (2, 2),
}


class HaarGeometry(BaseModel):
    """
    Image region covered by a haar feature.
    """
    x: int = Field(..., description="Left column of the region")
    y: int = Field(..., description="Top row of the region")
    width: int = Field(..., description="Region width in pixels")
    height: int = Field(..., description="Region height in pixels")

    class Config:
        allow_mutation = False

    def as_row(self) -> Tuple[int, int, int, int]:
        """Return the geometry as an (x, y, width, height) tuple."""
        return (self.x, self.y, self.width, self.height)

    @classmethod
    def from_row(cls, row) -> "HaarGeometry":
        """Build a geometry from any (x, y, width, height) sequence."""
        x, y, width, height = (int(v) for v in row)
        return cls(x=x, y=y, width=width, height=height)
