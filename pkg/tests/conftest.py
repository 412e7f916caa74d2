from __future__ import annotations

import functools
import time

import numpy as np
import pytest

from breakcast.experiment import ScenarioConfig, run_panel
from breakcast.presets import get_preset
from breakcast.transfer import KernelSpec

R_GRID = (0.8, 1.1, 1.5, 2.0)


def grid_specs() -> list[KernelSpec]:
    """All 8 (variant, r) combinations used in the study."""
    return [KernelSpec.build(v, r=r) for v in ("k", "kh") for r in R_GRID]


@pytest.fixture
def smoothed_spec() -> KernelSpec:
    return KernelSpec.build("kh", r=0.8)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@functools.lru_cache(maxsize=None)
def preset_reports(table: int, panel: str, workers: int = 1):
    """Published-table panel at its preset size, run once per session."""
    preset = get_preset(table, panel)
    config = ScenarioConfig(
        beta1_range=preset.beta1_range,
        beta2_range=preset.beta2_range,
        innovation=preset.innovation,
        n_sim=preset.n_sim,
        pu_time_offset=preset.pu_time_offset,
    )
    start = time.perf_counter()
    reports = run_panel(config, preset.r_list, preset.d_list, workers=workers)
    return reports, time.perf_counter() - start


CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)
