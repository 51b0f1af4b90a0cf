"""Sampled complex curves and the figure-data exports."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import inner, model
from .config import preset
from .errors import ConfigError

__all__ = ["GridFunction", "FigureSpec", "FIGURES", "figure_curve", "export_figure"]

_FMT = "%.17g"
TRIG_MARGIN = 1e-3
DEFAULT_POINTS = 1001
DEFAULT_HALF_WIDTH = 6.0


@dataclass(frozen=True)
class GridFunction:
    """Strictly increasing abscissae with complex samples."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if x.ndim != 1 or x.shape != v.shape:
            raise ValueError("abscissae and values must be 1-d arrays of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValueError("abscissae must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.x.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        table = np.column_stack([self.x, self.values.real, self.values.imag])
        np.savetxt(buf, table, fmt=_FMT, delimiter=",", header="x,re,im", comments="", newline="\n")
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_csv(), newline="\n")
        return path

    @classmethod
    def from_csv(cls, text: str) -> "GridFunction":
        lines = text.splitlines()
        if not lines or lines[0].strip() != "x,re,im":
            raise ValueError("expected header 'x,re,im'")
        data = np.loadtxt(io.StringIO("\n".join(lines[1:])), delimiter=",", ndmin=2)
        return cls(data[:, 0], data[:, 1] + 1j * data[:, 2])

    @classmethod
    def read_csv(cls, path: str | Path) -> "GridFunction":
        return cls.from_csv(Path(path).read_text())


@dataclass(frozen=True)
class FigureSpec:
    """Which preset and level feed each panel of a figure."""

    potential: tuple[str, int]
    density: tuple[str, int]


FIGURES: dict[str, FigureSpec] = {
    "fig1": FigureSpec(potential=("scarf-hyp-k0.1", 2), density=("scarf-hyp-k0.01", 2)),
    "fig2": FigureSpec(potential=("morse-k0.1", 1), density=("morse-k0.01", 2)),
    "fig3": FigureSpec(potential=("scarf-trig-b0.1", 0), density=("scarf-trig-b0.01", 2)),
}


def default_grid(spec: model.ModelSpec, points: int = DEFAULT_POINTS) -> np.ndarray:
    if spec.is_bounded:
        edge = math.pi / (2 * spec.alpha)
        return np.linspace(-edge + TRIG_MARGIN, edge - TRIG_MARGIN, points)
    return np.linspace(-DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, points)


def figure_curve(figure: str, which: str, points: int = DEFAULT_POINTS) -> GridFunction:
    """
    One panel of a figure as a GridFunction.

    ``potential`` samples V_{E_n}(x); ``density`` samples the pseudo-norm
    integrand of level n.
    """
    try:
        fig = FIGURES[figure]
    except KeyError:
        raise ConfigError(f"unknown figure {figure!r}; choose from {sorted(FIGURES)}") from None
    if which not in ("potential", "density"):
        raise ConfigError(f"unknown panel {which!r}; use 'potential' or 'density'")
    name, n = getattr(fig, which)
    spec = preset(name).spec
    x = default_grid(spec, points)
    state = model.bound_state(spec, n)
    if which == "potential":
        y = model.potential(spec, state.energy, x)
    else:
        y = inner.norm_integrand(spec, state)(x)
    return GridFunction(x, y)


def export_figure(figure: str, which: str, out_dir: str | Path, points: int = DEFAULT_POINTS) -> list[Path]:
    """Write ``<figure>_<panel>.csv`` files; ``which='both'`` writes the two panels."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    panels = ("potential", "density") if which == "both" else (which,)
    return [figure_curve(figure, p, points).write_csv(out / f"{figure}_{p}.csv") for p in panels]
