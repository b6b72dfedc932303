"""Two-dimensional advection-diffusion-reaction benchmark.

u_t = -alpha (u_x + u_y) + epsilon (u_xx + u_yy) + gamma u (u - 1/2) (1 - u)

on [0, 1]^2 with homogeneous Neumann boundaries, discretized by central
differences on a uniform grid that includes the boundary nodes. Ghost nodes
mirror their interior neighbours (u_{-1} = u_1) in every stencil.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..integrators.base import SplitOde, SplitOperator
from .base import BenchmarkProblem
from .metrics import l2_error


class AdrConfig(BaseModel):
    """ADR parameters."""

    model_config = ConfigDict(frozen=True)

    alpha: float = -10.0
    epsilon: float = 0.01
    gamma: float = 100.0
    dx: float = Field(default=1 / 40, gt=0)
    t_final: float = Field(default=0.1, gt=0)

    @model_validator(mode="after")
    def _check_grid(self) -> "AdrConfig":
        for field in ("alpha", "epsilon", "gamma", "dx", "t_final"):
            if not math.isfinite(getattr(self, field)):
                raise ValueError(f"{field} must be finite")
        m = round(1 / self.dx)
        if m < 2 or abs(m * self.dx - 1) > 1e-12:
            raise ValueError(f"dx = {self.dx} must divide [0, 1] into at least two intervals")
        return self

    @property
    def n_intervals(self) -> int:
        """Get number of grid intervals per side."""
        return round(1 / self.dx)


class Grid2D(BaseModel):
    """Square grid of (M+1) x (M+1) nodes; node (i, j) sits at (i dx, j dx).

    Flattening is row-major in (i, j): index = i (M+1) + j.
    """

    model_config = ConfigDict(frozen=True)

    n_intervals: int = Field(ge=2)

    @property
    def nodes_per_side(self) -> int:
        """Get nodes per side M + 1."""
        return self.n_intervals + 1

    @property
    def size(self) -> int:
        """Get total number of unknowns."""
        return self.nodes_per_side**2

    @property
    def spacing(self) -> float:
        """Get grid spacing."""
        return 1 / self.n_intervals

    @property
    def nodes(self) -> np.ndarray:
        """1D node coordinates."""
        return np.linspace(0.0, 1.0, self.nodes_per_side)

    def index(self, i: int, j: int) -> int:
        """Flat index of node (i, j)."""
        n = self.nodes_per_side
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"node ({i}, {j}) outside a {n}x{n} grid")
        return i * n + j

    def node(self, index: int) -> tuple[int, int]:
        """Node (i, j) of a flat index."""
        if not 0 <= index < self.size:
            raise IndexError(f"index {index} outside a grid of {self.size} nodes")
        return divmod(index, self.nodes_per_side)

    def coordinates(self, index: int) -> tuple[float, float]:
        """(x, y) of a flat index."""
        i, j = self.node(index)
        return i * self.spacing, j * self.spacing

    def neighbour(self, i: int, j: int, di: int, dj: int) -> tuple[int, int]:
        """Neighbour of (i, j), reflected back into the grid at the boundary."""
        last = self.n_intervals
        ni, nj = i + di, j + dj
        ni = -ni if ni < 0 else (2 * last - ni if ni > last else ni)
        nj = -nj if nj < 0 else (2 * last - nj if nj > last else nj)
        return ni, nj

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinates X, Y as (M+1, M+1) arrays indexed [i, j]."""
        return np.meshgrid(self.nodes, self.nodes, indexing="ij")

    def to_field(self, y: np.ndarray) -> np.ndarray:
        """View a flat state as an (M+1, M+1) field."""
        return np.asarray(y).reshape(self.nodes_per_side, self.nodes_per_side)


def _padded(u: np.ndarray) -> np.ndarray:
    return np.pad(u, 1, mode="reflect")


def first_difference(u: np.ndarray, dx: float, axis: int) -> np.ndarray:
    """Central first difference of a field along ``axis`` with mirrored ghosts."""
    p = _padded(u)
    if axis == 0:
        return (p[2:, 1:-1] - p[:-2, 1:-1]) / (2 * dx)
    return (p[1:-1, 2:] - p[1:-1, :-2]) / (2 * dx)


def second_difference(u: np.ndarray, dx: float, axis: int) -> np.ndarray:
    """Central second difference of a field along ``axis`` with mirrored ghosts."""
    p = _padded(u)
    if axis == 0:
        return (p[2:, 1:-1] - 2 * u + p[:-2, 1:-1]) / dx**2
    return (p[1:-1, 2:] - 2 * u + p[1:-1, :-2]) / dx**2


def adr_split(cfg: AdrConfig) -> SplitOde:
    """Four-operator split: advection, x-diffusion, y-diffusion, reaction."""
    grid = Grid2D(n_intervals=cfg.n_intervals)
    dx = grid.spacing

    def advection(t: complex, y: np.ndarray) -> np.ndarray:
        u = grid.to_field(y)
        return (-cfg.alpha * (first_difference(u, dx, 0) + first_difference(u, dx, 1))).ravel()

    def diffusion_x(t: complex, y: np.ndarray) -> np.ndarray:
        return (cfg.epsilon * second_difference(grid.to_field(y), dx, 0)).ravel()

    def diffusion_y(t: complex, y: np.ndarray) -> np.ndarray:
        return (cfg.epsilon * second_difference(grid.to_field(y), dx, 1)).ravel()

    def reaction(t: complex, y: np.ndarray) -> np.ndarray:
        return cfg.gamma * y * (y - 0.5) * (1 - y)

    def full(t: complex, y: np.ndarray) -> np.ndarray:
        u = grid.to_field(y)
        gradient = first_difference(u, dx, 0) + first_difference(u, dx, 1)
        laplacian = second_difference(u, dx, 0) + second_difference(u, dx, 1)
        return (-cfg.alpha * gradient + cfg.epsilon * laplacian).ravel() + reaction(t, y)

    operators = [
        SplitOperator(name="advection", rhs=advection),
        SplitOperator(name="diffusion-x", rhs=diffusion_x),
        SplitOperator(name="diffusion-y", rhs=diffusion_y),
        SplitOperator(name="reaction", rhs=reaction),
    ]
    return SplitOde("adr2d", operators, dimension=grid.size, full=full)


def adr_initial(cfg: AdrConfig) -> np.ndarray:
    """u(x, y, 0) = 256 (x y (1 - x) (1 - y))^2 + 0.3 at the grid nodes."""
    x, y = Grid2D(n_intervals=cfg.n_intervals).mesh()
    u = 256 * (x * y * (1 - x) * (1 - y)) ** 2 + 0.3
    return u.ravel().astype(complex)


class AdrProblem(BenchmarkProblem):
    """ADR benchmark measured by the l2 error at the final time."""

    def __init__(self, config: AdrConfig | None = None):
        self.config = config or AdrConfig()

    @property
    def name(self) -> str:
        """Get the problem id."""
        return "adr2d"

    @property
    def t_final(self) -> float:
        """Get the end of the time span."""
        return self.config.t_final

    @property
    def default_dt0(self) -> float:
        """Largest default step; at dx = 1/40 RK4 advection blows up above ~0.0035."""
        return self.config.t_final / 32

    def split_ode(self) -> SplitOde:
        """Build the split right-hand side."""
        return adr_split(self.config)

    def initial_state(self) -> np.ndarray:
        """Build the initial field."""
        return adr_initial(self.config)

    def error(self, states: np.ndarray, reference: np.ndarray) -> float:
        """l2 error of the final state."""
        return l2_error(states[-1], reference[-1])
