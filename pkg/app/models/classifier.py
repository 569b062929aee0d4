"""
Pydantic models for weak and strong haar classifiers and their file form.
"""
from typing import List, Union

from pydantic import BaseModel, Field, root_validator, validator

from app.core.haar import is_valid_geometry
from app.models.geometry import HaarGeometry, HaarType


def _check_polarity(value: int) -> int:
    if value not in (-1, 1):
        raise ValueError(f"polarity must be -1 or +1, got {value}")
    return value


class StumpParams(BaseModel):
    """
    Linked parameters of a decision stump.
    """
    polarity: int = Field(..., description="Label predicted above the threshold")
    threshold: float = Field(..., description="Decision threshold on the feature value")

    _polarity = validator("polarity", allow_reuse=True)(_check_polarity)


class WeakClassifier(BaseModel):
    """
    A haar-feature decision stump: w = (x, y, width, height, type, g, t).
    """
    geometry: HaarGeometry
    haar_type: HaarType = Field(..., description="Feature type")
    polarity: int = Field(..., description="Feature sign g")
    threshold: float = Field(..., description="Threshold t")

    _polarity = validator("polarity", allow_reuse=True)(_check_polarity)

    @property
    def stump(self) -> StumpParams:
        return StumpParams(polarity=self.polarity, threshold=self.threshold)

    def fits(self, window_w: int, window_h: int) -> bool:
        """True when the geometry is valid for this type in the given window."""
        return is_valid_geometry(self.geometry, self.haar_type, window_w, window_h)


class Stage(BaseModel):
    """
    One weighted term of a strong classifier.
    """
    alpha: float = Field(..., gt=0, description="Vote weight")
    weak: WeakClassifier


class StrongClassifier(BaseModel):
    """
    s(y) = sign(sum_i alpha_i * w_i(y)) over a fixed window size.
    """
    window_w: int = Field(..., ge=1)
    window_h: int = Field(..., ge=1)
    stages: List[Stage] = Field(..., min_items=1)

    @root_validator(skip_on_failure=True)
    def _stages_fit_window(cls, values):
        for index, stage in enumerate(values["stages"]):
            if not stage.weak.fits(values["window_w"], values["window_h"]):
                raise ValueError(
                    f"stage {index} geometry {stage.weak.geometry.as_row()} does not fit "
                    f"{stage.weak.haar_type.tag} in a {values['window_w']}x{values['window_h']} window"
                )
        return values

    @property
    def alphas(self) -> List[float]:
        return [stage.alpha for stage in self.stages]


class StageRecord(BaseModel):
    """
    Flat, file-level form of a Stage. Field order is the on-disk order.
    """
    alpha: float = Field(..., gt=0)
    x: int
    y: int
    w: int
    h: int
    type: str
    polarity: int
    threshold: float

    @validator("type", pre=True)
    def _type_tag(cls, value: Union[str, int]) -> str:
        return HaarType.from_tag(value).tag

    _polarity = validator("polarity", allow_reuse=True)(_check_polarity)


class ModelFile(BaseModel):
    """
    On-disk document of a trained strong classifier.
    """
    window_w: int = Field(..., ge=1)
    window_h: int = Field(..., ge=1)
    stages: List[StageRecord] = Field(..., min_items=1)

    @classmethod
    def from_classifier(cls, strong: StrongClassifier) -> "ModelFile":
        return cls(
            window_w=strong.window_w,
            window_h=strong.window_h,
            stages=[
                StageRecord(
                    alpha=stage.alpha,
                    x=stage.weak.geometry.x,
                    y=stage.weak.geometry.y,
                    w=stage.weak.geometry.width,
                    h=stage.weak.geometry.height,
                    type=stage.weak.haar_type.tag,
                    polarity=stage.weak.polarity,
                    threshold=stage.weak.threshold,
                )
                for stage in strong.stages
            ],
        )

    def to_classifier(self) -> StrongClassifier:
        return StrongClassifier(
            window_w=self.window_w,
            window_h=self.window_h,
            stages=[
                Stage(
                    alpha=record.alpha,
                    weak=WeakClassifier(
                        geometry=HaarGeometry(x=record.x, y=record.y, width=record.w, height=record.h),
                        haar_type=HaarType.from_tag(record.type),
                        polarity=record.polarity,
                        threshold=record.threshold,
                    ),
                )
                for record in self.stages
            ],
        )
