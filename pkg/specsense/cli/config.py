import logging
import tomllib
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, ValidationError

from specsense.channel.models import ChannelModel
from specsense.channel.occupancy import independence_diagnostics
from specsense.cli.models import ExperimentConfig, SweepVariable
from specsense.core.constants import TXT_ENCODING
from specsense.core.exceptions import ConfigError, InstabilityError
from specsense.dynamics.models import LinearSystem
from specsense.dynamics.system import validate_system
from specsense.estimation.bound import average_bound
from specsense.estimation.models import CovarianceMatrix
from specsense.optimizer.models import ProblemSpec
from specsense.sensing.detection import false_alarm_threshold
from specsense.sensing.models import EnergyParams, SensingConfig

logger = logging.getLogger(__name__)

ModelT = TypeVar('ModelT', bound=BaseModel)


def _describe(error: ValidationError, prefix: str = '') -> str:
    """One line per violated invariant: dotted key, pydantic error type and message."""
    lines = []
    for detail in error.errors():
        key = '.'.join(str(part) for part in detail['loc'])
        key = f'{prefix}.{key}' if prefix and key else prefix or key
        lines.append(f"{key or '<root>'} [{detail['type']}]: {detail['msg']}")
    return '; '.join(lines)


def parse_config(text: str) -> ExperimentConfig:
    """
    Parses an experiment configuration made of flat dotted keys, e.g. ``channel.alpha = 5.0``.
    :param text: TOML document.
    :return: Validated configuration; omitted keys take the reference scenario's values.
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as error:
        raise ConfigError(f"Malformed configuration: {error}") from error
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as error:
        raise ConfigError(f"Invalid configuration: {_describe(error)}") from error


def load_config(path: Path) -> ExperimentConfig:
    """Reads and parses a configuration file."""
    try:
        text = path.read_text(encoding=TXT_ENCODING)
    except OSError as error:
        raise ConfigError(f"Cannot read configuration {path}: {error}") from error
    logger.info(f'Loaded configuration from {path}.')
    return parse_config(text)


def _validated(section: str, model: type[ModelT], **fields: Any) -> ModelT:
    """Builds a domain model from one configuration section, reporting violations under the section's keys."""
    try:
        return model(**fields)
    except ValidationError as error:
        raise ConfigError(f"Invalid configuration: {_describe(error, section)}") from error


def build_problem(cfg: ExperimentConfig) -> ProblemSpec:
    """
    Turns a configuration into a validated problem. A missing eps_f is derived from eps_d and the SNR, a missing
    target is the averaged bound of the reference (reception rate, period) pair.
    :param cfg: Configuration.
    :return: Problem.
    """
    system = cfg.system
    sys = _validated('system', LinearSystem, A=system.A, C=system.C, Q=system.Q, R=system.R)
    report = validate_system(sys)
    if not report.passed:
        failed = ', '.join(check.name for check in report.checks if not check.passed)
        raise ConfigError(f"Invalid configuration: system violates {failed}.")
    ch = _validated('channel', ChannelModel, alpha=cfg.channel.alpha, beta=cfg.channel.beta)
    independence_diagnostics(ch, system.sampling_period)

    sensing = cfg.sensing
    eps_f = sensing.eps_f if sensing.eps_f is not None else false_alarm_threshold(sensing.eps_d, sensing.snr_db)
    sense = _validated(
        'sensing',
        SensingConfig,
        tau_max=sensing.tau_max,
        bandwidth=sensing.bandwidth,
        eps_d=sensing.eps_d,
        eps_f=eps_f,
        t_x=sensing.t_x,
    )
    ep = _validated('energy', EnergyParams, e_s=cfg.energy.e_s, e_tx=cfg.energy.e_tx)
    P_bar = _target(cfg, sys)
    return _validated(
        'performance', ProblemSpec, sys=sys, ch=ch, sense=sense, ep=ep, P_bar=P_bar, order=cfg.performance.order
    )


def _target(cfg: ExperimentConfig, sys: LinearSystem) -> CovarianceMatrix:
    performance = cfg.performance
    if performance.p_bar is not None:
        return _validated('performance.p_bar', CovarianceMatrix, entries=performance.p_bar)
    try:
        return average_bound(sys, performance.reference_gamma, performance.reference_period)
    except InstabilityError as error:
        raise ConfigError(f"Invalid configuration: reference target is unbounded ({error}).") from error


def sweep_points(cfg: ExperimentConfig) -> list[tuple[float, ProblemSpec]]:
    """
    Problems of a sweep. Idle probabilities move beta = alpha p_I / (1 - p_I) with alpha fixed, energy ratios move
    e_tx = ratio e_s with e_s fixed. The target is computed once and shared by every point.
    :param cfg: Configuration with a sweep section.
    :return: (swept value, problem) pairs in configured order.
    """
    if cfg.sweep is None:
        raise ConfigError("Invalid configuration: the sweep command needs sweep.variable and sweep.values.")
    base = build_problem(cfg)
    points = []
    for value in cfg.sweep.values:
        if cfg.sweep.variable is SweepVariable.IDLE_PROBABILITY:
            channel = ChannelModel(alpha=base.ch.alpha, beta=base.ch.alpha * value / (1.0 - value))
            points.append((value, base.model_copy(update={'ch': channel})))
        else:
            if base.ep.e_s == 0.0:
                raise ConfigError("Invalid configuration: an energy_ratio sweep needs energy.e_s > 0.")
            energy = EnergyParams(e_s=base.ep.e_s, e_tx=value * base.ep.e_s)
            points.append((value, base.model_copy(update={'ep': energy})))
    return points
