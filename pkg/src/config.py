import os
from pathlib import Path

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class CapsConfig(BaseModel):
    """Size caps for the brute-force computations."""

    max_n: int = Field(default=12, ge=1, description="Retractions, retracts and Ret")
    congruence_max_n: int = Field(default=64, ge=1)
    quasiorder_max_n: int = Field(default=8, ge=1)
    enumerate_max_n: int = Field(default=9, ge=1)
    product_max_n: int = Field(default=4096, ge=1)
    grid_max_mn: int = Field(default=64, ge=4, description="Streaming grid retracts")


class Config(BaseModel):
    caps: CapsConfig = Field(default_factory=CapsConfig)
    data_dir: Path


CONFIG_DIR = Path.home() / ".retractlab"
CONFIG_FILE = CONFIG_DIR / "config.env"

# Environment variable for each cap field.
CAP_ENV_KEYS = {
    "max_n": "RETRACTLAB_MAX_N",
    "congruence_max_n": "RETRACTLAB_CONGRUENCE_MAX_N",
    "quasiorder_max_n": "RETRACTLAB_QUASIORDER_MAX_N",
    "enumerate_max_n": "RETRACTLAB_ENUMERATE_MAX_N",
    "product_max_n": "RETRACTLAB_PRODUCT_MAX_N",
    "grid_max_mn": "RETRACTLAB_GRID_MAX_MN",
}
DATA_DIR_KEY = "RETRACTLAB_DATA_DIR"


def get_config(max_n: int | None = None) -> Config:
    """
    Effective configuration.

    Values come from the process environment, then from ``config.env`` for
    keys the environment does not set, then from the defaults. ``max_n``
    (the ``--max-n`` flag) wins over all of them.

    Raises:
        pydantic.ValidationError: if a value is not a valid cap.
    """
    # Read fresh on every call; the file never leaks into os.environ.
    file_values = dotenv_values(CONFIG_FILE) if CONFIG_FILE.exists() else {}
    values = {key: value for key, value in file_values.items() if value is not None}
    values.update(os.environ)

    caps = {field: values[key] for field, key in CAP_ENV_KEYS.items() if key in values}
    if max_n is not None:
        caps["max_n"] = max_n
    data_dir = values.get(DATA_DIR_KEY) or str(CONFIG_DIR)
    return Config(caps=CapsConfig(**caps), data_dir=Path(data_dir).expanduser())


def update_config(key: str, value: str):
    if not CONFIG_DIR.exists():
        CONFIG_DIR.mkdir(parents=True)
    lines = []
    if CONFIG_FILE.exists():
        with open(CONFIG_FILE, "r") as f:
            lines = f.readlines()
    key_found = False
    with open(CONFIG_FILE, "w") as f:
        for line in lines:
            if line.startswith(f"{key}="):
                f.write(f"{key}={value}\n")
                key_found = True
            else:
                f.write(line)
        if not key_found:
            f.write(f"{key}={value}\n")
