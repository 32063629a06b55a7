"""Synthetic labeled datasets of vessel recordings."""

from itertools import combinations
from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd
from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

from ..audio import write_wav
from ..evaluation.manifest import DatasetManifest, write_manifest
from ..exceptions import ArtifactIOError, ContractError
from ..features import NO_FINE_LABEL
from ..models import Xoshiro256StarStar
from .vessel import VesselParams, synth_vessel_signal

MANIFEST_NAME = "manifest.csv"
Range = Tuple[float, float]


class ClassBox(BaseModel):
    """Parameter box of one class; parameters are drawn uniformly inside it."""

    shaft_hz: Range
    blade_counts: List[int]
    mod_depth: Range = (0.4, 0.6)
    snr_db: Range = (8.0, 12.0)

    @field_validator("shaft_hz", "mod_depth", "snr_db")
    @classmethod
    def validate_range(cls, v: Range) -> Range:
        if v[0] > v[1]:
            raise ValueError(f"range {v} is reversed")
        return v

    @field_validator("blade_counts")
    @classmethod
    def validate_blades(cls, v: List[int]) -> List[int]:
        if not v or any(not 2 <= b <= 7 for b in v):
            raise ValueError(
                f"blade counts must be a non-empty subset of [2, 7], got {v}"
            )
        return sorted(set(v))

    def disjoint_from(self, other: "ClassBox") -> bool:
        """True when the boxes are separated in at least one coordinate."""

        def apart(a: Range, b: Range) -> bool:
            return a[1] < b[0] or b[1] < a[0]

        return (
            apart(self.shaft_hz, other.shaft_hz)
            or not set(self.blade_counts) & set(other.blade_counts)
            or apart(self.mod_depth, other.mod_depth)
            or apart(self.snr_db, other.snr_db)
        )


class SynthSpec(BaseModel):
    """Dataset geometry: coarse class boxes and fine sub-boxes of one class."""

    classes: List[ClassBox]
    fine_types: List[ClassBox] = Field(default_factory=list)
    refine_category: int = 1
    per_class: int = 40
    duration_s: float = 10.0
    sample_rate_hz: float = 16000.0
    shaft_line_frac: float = 0.5
    seed: int = 0

    @field_validator("per_class")
    @classmethod
    def validate_per_class(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"per_class must be >= 1, got {v}")
        return v

    @model_validator(mode="after")
    def validate_geometry(self) -> "SynthSpec":
        if not self.classes:
            raise ValueError("at least one class is required")
        for (i, a), (j, b) in combinations(enumerate(self.classes), 2):
            if not a.disjoint_from(b):
                raise ValueError(f"class boxes {i} and {j} overlap in every coordinate")
        for (i, a), (j, b) in combinations(enumerate(self.fine_types), 2):
            if not a.disjoint_from(b):
                raise ValueError(
                    f"fine type boxes {i} and {j} overlap in every coordinate"
                )
        if self.fine_types and not (0 <= self.refine_category < len(self.classes)):
            raise ValueError(f"refine_category {self.refine_category} is not a class")
        return self


def default_synth_spec(
    n_classes: int = 5,
    per_class: int = 40,
    duration_s: float = 10.0,
    sample_rate_hz: float = 16000.0,
    seed: int = 0,
) -> SynthSpec:
    """Desk-scale geometry with ten fine types inside coarse class 1.

    Fine type ``j`` has 3 blades for ``j < 5`` and 4 otherwise, with a 0.6 Hz
    wide shaft band starting at ``6 + j % 5`` Hz.
    """
    boxes = [
        ClassBox(shaft_hz=(3.0, 5.0), blade_counts=[2]),
        ClassBox(shaft_hz=(6.0, 11.0), blade_counts=[3, 4]),
        ClassBox(shaft_hz=(3.0, 6.0), blade_counts=[5]),
        ClassBox(shaft_hz=(3.0, 5.0), blade_counts=[3]),
        ClassBox(shaft_hz=(11.5, 14.0), blade_counts=[2]),
    ]
    if not 2 <= n_classes <= len(boxes):
        raise ContractError(
            f"The default geometry has 2 to {len(boxes)} classes, got {n_classes}"
        )
    fine_types = [
        ClassBox(shaft_hz=(6.0 + j % 5, 6.6 + j % 5), blade_counts=[3 if j < 5 else 4])
        for j in range(10)
    ]
    return SynthSpec(
        classes=boxes[:n_classes],
        fine_types=fine_types,
        refine_category=1,
        per_class=per_class,
        duration_s=duration_s,
        sample_rate_hz=sample_rate_hz,
        seed=seed,
    )


def draw_params(
    box: ClassBox, spec: SynthSpec, rng: Xoshiro256StarStar
) -> VesselParams:
    """Draw one recording's parameters uniformly from a box."""
    blades = box.blade_counts[rng.randbelow(len(box.blade_counts))]
    return VesselParams(
        shaft_hz=rng.uniform(*box.shaft_hz),
        blade_count=blades,
        mod_depth=rng.uniform(*box.mod_depth),
        shaft_line_frac=spec.shaft_line_frac,
        snr_db=rng.uniform(*box.snr_db),
        duration_s=spec.duration_s,
        sample_rate_hz=spec.sample_rate_hz,
        seed=rng.next_u64(),
    )


def plan_dataset(spec: SynthSpec) -> List[Tuple[str, int, int, VesselParams]]:
    """File name, labels and parameters of every recording, in (class, index) order.

    Rows of the refine category cycle through the fine types.
    """
    rng = Xoshiro256StarStar(spec.seed)
    plan = []
    for coarse, box in enumerate(spec.classes):
        refined = coarse == spec.refine_category and bool(spec.fine_types)
        for index in range(spec.per_class):
            fine: Optional[int] = None
            if refined:
                fine = index % len(spec.fine_types)
                params = draw_params(spec.fine_types[fine], spec, rng)
                name = f"c{coarse}_f{fine}_{index:04d}.wav"
            else:
                params = draw_params(box, spec, rng)
                name = f"c{coarse}_{index:04d}.wav"
            plan.append((name, coarse, NO_FINE_LABEL if fine is None else fine, params))
    return plan


def generate_dataset(spec: SynthSpec, out_dir: Union[str, Path]) -> DatasetManifest:
    """Write every planned recording as WAV plus ``manifest.csv``.

    Raises:
        ArtifactIOError: If the directory or a file cannot be written
    """
    root = Path(out_dir)
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ArtifactIOError(
            root, f"cannot create directory: {e.strerror or e}"
        ) from e

    rows = []
    for name, coarse, fine, params in plan_dataset(spec):
        write_wav(synth_vessel_signal(params), root / name)
        rows.append({"path": name, "label_coarse": coarse, "label_fine": fine})
        logger.debug(
            f"{name}: shaft {params.shaft_hz:.3f} Hz x {params.blade_count} blades, "
            f"SNR {params.snr_db:.1f} dB"
        )

    manifest = DatasetManifest(pd.DataFrame(rows), root)
    write_manifest(manifest, root / MANIFEST_NAME)
    logger.info(f"Synthesized {len(rows)} recordings in {root}")
    return manifest
