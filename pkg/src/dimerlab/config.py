from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    """Desk-scale size limits. Every exponential-time routine checks one of these."""

    max_vertices: int = 4096
    brute_order: int = 10
    exact_order: int = 12
    ryser_order: int = 30
    tiling_order: int = 8
    # fixed chunk count for the Ryser subset range; results do not depend on workers
    ryser_chunks: int = 64


DEFAULT_CAPS = Caps()

# normalization tolerance for weighting construction
NORM_TOL = 1e-12
# doubly stochastic tolerance for weight matrices
STOCHASTIC_TOL = 1e-10
