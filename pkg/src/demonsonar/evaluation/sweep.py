"""Hidden-width sweeps over one shared split."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from loguru import logger

from ..config import CascadeConfig
from ..exceptions import ContractError
from ..features import validate_feature_table
from ..models import CascadeFit, cascade_split, fit_cascade
from .manifest import DatasetManifest
from .metrics import Metrics, evaluate

DEFAULT_WIDTHS = (12, 16, 20, 28)

WidthCallback = Callable[[int], None]


@dataclass(frozen=True)
class WidthResult:
    """Metrics of the cascade trained at one hidden width."""

    hidden_width: int
    coarse: Metrics
    fine: Optional[Metrics]
    fit: CascadeFit


@dataclass
class SweepResult:
    """Per-width results; every width shares ``val_index``."""

    val_index: np.ndarray
    results: List[WidthResult] = field(default_factory=list)

    @property
    def widths(self) -> List[int]:
        return [r.hidden_width for r in self.results]


def sweep_hidden_widths(
    rows: Union[DatasetManifest, pd.DataFrame],
    widths: Sequence[int] = DEFAULT_WIDTHS,
    base_config: Optional[CascadeConfig] = None,
    on_width: Optional[WidthCallback] = None,
) -> SweepResult:
    """Train and evaluate one cascade per hidden width on the same split.

    Raises:
        ContractError: If ``widths`` is empty, plus any training error
    """
    if not widths:
        raise ContractError("At least one hidden width is required")
    config = base_config or CascadeConfig()
    table = rows.feature_table() if isinstance(rows, DatasetManifest) else rows
    table = validate_feature_table(table)

    split = cascade_split(table, config)
    validation = table.iloc[split[1]]
    sweep = SweepResult(val_index=split[1])

    for width in widths:
        if on_width is not None:
            on_width(int(width))
        train_config = config.train.model_copy(update={"hidden_width": int(width)})
        width_config = config.model_copy(update={"train": train_config})
        fit = fit_cascade(table, width_config, split)
        coarse, fine = evaluate(fit.model, validation)
        logger.info(
            f"Width {width}: coarse {coarse.overall_accuracy:.3f}"
            + (f", fine {fine.overall_accuracy:.3f}" if fine is not None else "")
        )
        sweep.results.append(WidthResult(int(width), coarse, fine, fit))
    return sweep
