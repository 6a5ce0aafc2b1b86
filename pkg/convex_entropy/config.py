import json, os, logging
from dataclasses import asdict, dataclass, fields, replace as _replace

logger = logging.getLogger(__name__)

CONFIG_FILE = os.path.expanduser("~/.convex_entropy_config.json")


def config_path() -> str:
    return os.environ.get("CONVEX_ENTROPY_CONFIG") or CONFIG_FILE


def load_config() -> dict:
    path = config_path()
    if os.path.exists(path):
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            return data if isinstance(data, dict) else {}
        except Exception as e:
            logger.warning("Ignoring unreadable config %s: %s", path, e)
            return {}
    return {}


def save_config(data: dict):
    path = config_path()
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2)
    except Exception as e:
        logger.warning("Failed to save config: %s", e)


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every module.

    Relative entries are scaled by the quantity named in their docstring at
    the point of use (max h for the convexity margin, max(1, V(K)) for
    slacks, V(K)V(L) for the discriminant).
    """

    convexity_margin: float = 1e-6
    slack_rel: float = 1e-8
    equality_rel: float = 1e-6
    discriminant_rel: float = 1e-10
    feasibility: float = 1e-8
    active: float = 1e-9
    homothety: float = 1e-6
    position_oversample: int = 4
    wulff_factor: int = 4

    @classmethod
    def from_config(cls, data: dict | None = None) -> "Tolerances":
        if data is None:
            data = load_config()
        section = data.get("tolerances") or {}
        known = {f.name for f in fields(cls)}
        values = {}
        for key, raw in section.items():
            if key not in known:
                logger.warning("Unknown tolerance %r in config, ignored", key)
                continue
            default = getattr(cls, key)
            try:
                values[key] = type(default)(raw)
            except (TypeError, ValueError):
                logger.warning("Bad value %r for tolerance %r in config, using %r", raw, key, default)
        return cls(**values)

    def replace(self, **changes) -> "Tolerances":
        return _replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
