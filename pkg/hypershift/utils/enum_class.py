class Classification:
    FIXED_POINT = 'fixed_point'
    CLOSED_CURVE = 'closed_curve'
    UNRESOLVED = 'unresolved'


class ExitCode:
    OK = 0
    CONFIG_ERROR = 2
    DEGENERATE = 3
    DISCREPANCY = 4
    GATE_FAILURE = 5


class OutputFormat:
    CSV = 'csv'
    JSON = 'json'


class FixedPointClause:
    NONE = 'none'
    BOUNDARY_PRODUCTS = 'boundary_products'
    INTERIOR_BALANCE = 'interior_balance'
    DIRECT_IMAGE = 'direct_image'


class Stability:
    STABLE = 'stable'
    UNSTABLE = 'unstable'
    NEUTRAL = 'neutral'


class SchemaVersion:
    CSV = 1


class Defaults:
    STATE_TOL = 1e-12
    FIXED_POINT_THRESHOLD = 1e-6
    DISPERSION_LIMIT = 0.2
    ESCAPE_RADIUS = 0.5
    BURN = 100_000
    SETTLE_TOL = 0.01
    SETTLE_FACTOR = 20.0
    OUTER_SEED_FACTOR = 1.2
    ITERS = 10_000
    MIN_ORBIT = 1_000
    MODES = 32
    MAX_MODES = 64
    REFINE_MAX_ITER = 50
    REFINE_TOL = 1e-10
    Q_TOL = 1e-5
    Q_MAX_ITER = 1_000_000
    SWEEP_GRID = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1)
