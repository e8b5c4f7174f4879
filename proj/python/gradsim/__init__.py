from ._gradsim import (
    AttackResult,
    ConfigError,
    Model,
    load_model,
    roc_auc,
    run_attack,
    run_pipeline,
    validate_config,
)

__all__ = [
    "AttackResult",
    "ConfigError",
    "Model",
    "load_model",
    "roc_auc",
    "run_attack",
    "run_pipeline",
    "validate_config",
]
