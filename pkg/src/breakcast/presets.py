"""Scenario presets for the five published result tables."""

from __future__ import annotations

from dataclasses import dataclass

from breakcast.simulate import InnovationKind

R_ALL = (0.8, 1.1, 1.5, 2.0)
R_ENDS = (0.8, 2.0)
D_ALL = (4, 5, 6)

POS = (0.0, 1.0)
NEG = (-1.0, 0.0)
WIDE = (-1.0, 1.0)


@dataclass(frozen=True)
class TablePreset:
    table: int
    panel: str
    beta1_range: tuple[float, float]
    beta2_range: tuple[float, float]
    innovation: InnovationKind
    n_sim: int = 300_000
    r_list: tuple[float, ...] = R_ALL
    d_list: tuple[int, ...] = D_ALL
    pu_time_offset: int = 0

    @property
    def title(self) -> str:
        return (
            f"Table {self.table} panel ({self.panel}): beta1 in {self.beta1_range}, "
            f"beta2 in {self.beta2_range}, {self.innovation.value} innovations, n_sim={self.n_sim}"
        )


def _four_panels(table: int, innovation: InnovationKind, **extra) -> dict[tuple[int, str], TablePreset]:
    ranges = {"a": (POS, POS), "b": (WIDE, WIDE), "c": (NEG, POS), "d": (POS, NEG)}
    return {
        (table, panel): TablePreset(table, panel, b1, b2, innovation, r_list=R_ENDS, **extra)
        for panel, (b1, b2) in ranges.items()
    }


PRESETS: dict[tuple[int, str], TablePreset] = {
    (1, "a"): TablePreset(1, "a", POS, POS, InnovationKind.IID_GAUSSIAN, n_sim=100_000),
    (1, "b"): TablePreset(1, "b", POS, POS, InnovationKind.IID_GAUSSIAN, n_sim=200_000),
    (1, "c"): TablePreset(1, "c", POS, POS, InnovationKind.IID_GAUSSIAN),
    (2, "a"): TablePreset(2, "a", WIDE, WIDE, InnovationKind.IID_GAUSSIAN),
    (2, "b"): TablePreset(2, "b", NEG, POS, InnovationKind.IID_GAUSSIAN),
    (2, "c"): TablePreset(2, "c", POS, NEG, InnovationKind.IID_GAUSSIAN),
    **_four_panels(3, InnovationKind.SHIFTED_GAMMA),
    # the published pseudo-uniform runs count time from 1
    **_four_panels(4, InnovationKind.SCALED_PSEUDO_UNIFORM, pu_time_offset=1),
    **_four_panels(5, InnovationKind.MA1_GAUSSIAN),
}


def get_preset(table: int, panel: str) -> TablePreset:
    try:
        return PRESETS[(table, panel)]
    except KeyError:
        panels = sorted(p for t, p in PRESETS if t == table)
        raise KeyError(f"no panel {panel!r} for table {table}; available: {panels}") from None
