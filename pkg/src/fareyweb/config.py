"""Runtime configuration: tolerances, caps, grid densities, parallelism.

A config file is flat ``key=value`` lines (``#`` comments allowed); command
line ``--set key=value`` overrides win over the file, which wins over the
defaults below.  The effective configuration is echoed into every output
header so a result file alone reproduces its run.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


@dataclass
class Config:
    rot_tol: float = 1e-6        # rotation-number enclosure target width
    rot_max_iter: int = 10_000_000
    scan_tol: float = 1e-3       # coarser enclosure width for raster scans
    solver_tol: float = 1e-12    # bisection width in a
    b_tol: float = 1e-10         # bisection width in b (tips)
    b_step: float = 0.01         # coarse scan step in b
    b_ceiling: float = 4.0
    q_cap: int = 64
    grid_base: int = 4096        # displacement grid: grid_base + grid_per_q * q
    grid_per_q: int = 512
    scan_grid_base: int = 1024   # cheaper displacement grid for raster cells
    scan_grid_per_q: int = 128
    snap_qmax: int = 128
    workers: int = 1

    def __post_init__(self):
        for name in ("rot_tol", "scan_tol", "solver_tol", "b_tol", "b_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.q_cap < 1:
            raise ValueError("q_cap must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @property
    def grid(self) -> tuple[int, int]:
        return (self.grid_base, self.grid_per_q)

    @property
    def scan_grid(self) -> tuple[int, int]:
        return (self.scan_grid_base, self.scan_grid_per_q)

    def apply(self, key: str, value: str) -> None:
        for f in fields(self):
            if f.name == key:
                setattr(self, key, _cast(f.type, value))
                self.__post_init__()
                return
        raise KeyError(f"unknown config key {key!r}")

    def header(self) -> str:
        parts = " ".join(f"{f.name}={getattr(self, f.name)}" for f in fields(self))
        return f"# config: {parts}"

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _cast(type_name, value: str):
    # dataclass field types arrive as strings under `from __future__ import annotations`
    name = type_name if isinstance(type_name, str) else type_name.__name__
    if name == "int":
        return int(value)
    if name == "float":
        return float(value)
    return value


def load_config(path: str | Path | None = None, overrides: list[str] | None = None) -> Config:
    cfg = Config()
    if path is not None:
        for raw in Path(path).read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            if not value:
                raise ValueError(f"bad config line {raw!r}; expected key=value")
            cfg.apply(key.strip(), value.strip())
    for item in overrides or []:
        key, _, value = item.partition("=")
        if not value:
            raise ValueError(f"bad override {item!r}; expected key=value")
        cfg.apply(key.strip(), value.strip())
    return cfg
