"""
Command implementations shared by the CLI and the HTTP front end.

Each command takes a validated RunConfig and returns a CommandResult holding
either a JSON payload or CSV text, plus the process exit code.
"""
import csv
import io
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from algebra.operator import apply_br_integral, apply_br_power, apply_br_raw
from algebra.scalars import Mode, format_pair, parse_complex_pair, parse_rational, to_complex, to_exact
from algebra.series import REvenSeries
from dynamics.certificate import DEFAULT_ALPHAS, CertifyConfig, certify
from dynamics.operator import ConvolutionOperator, apply_power
from dynamics.symbol import write_symbol_csv
from dynamics.witness import DEFAULT_NODES, MAX_NODES
from harmonic.convolution import convolve, moment_convolution
from harmonic.fourier import fourier, inverse_fourier, pa_norm_estimate
from harmonic.functional import MomentFunctional
from harmonic.translation import translate_addition, translate_delsarte
from special.bessel import j_eval, j_series

from .config import VERSION, RunConfig
from .identities import DEFAULT_CASES, DEFAULT_FUNCTIONAL_ORDER, DEFAULT_ORDER, FAULTS, IdentitySuite
from .serialization import (
    certificate_to_model,
    functional_from_model,
    functional_to_model,
    gamma_pairs,
    series_from_model,
    series_to_model,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_REFUSAL = 2
EXIT_TOLERANCE = 3

EVAL_COLUMNS = ["z_re", "z_im", "val_re", "val_im", "bound", "N_used"]


@dataclass
class CommandResult:
    """Output of one command: a JSON payload or CSV text, and an exit code."""
    payload: Optional[Dict[str, Any]] = None
    text: Optional[str] = None
    exit_code: int = EXIT_OK

    def render(self) -> str:
        if self.text is not None:
            return self.text
        return json.dumps(self.payload, sort_keys=True, indent=2) + "\n"


def report_header(config: RunConfig) -> Dict[str, Any]:
    """Version, seed and config echo carried by every output."""
    return {"version": VERSION, "seed": config.seed, "config": config.echo()}


# Parameter parsing

def parse_scalar(value, mode: Mode):
    """A scalar given as a number, a rational string or an [re, im] pair."""
    if isinstance(value, (list, tuple)):
        return parse_complex_pair(value, mode)
    if mode is Mode.EXACT:
        return to_exact(value)
    return to_complex(float(Fraction(value)) if isinstance(value, str) else value)


def build_series(param, config: RunConfig) -> REvenSeries:
    """
    Series from a parameter: a serialized series, {"bessel": lam} or {"basis": n}.
    """
    if not isinstance(param, dict):
        raise ValueError("a series parameter must be an object")
    vi, N, mode = config.vi, config.truncation, config.mode
    if "bessel" in param:
        return j_series(vi, parse_scalar(param["bessel"], mode), N, mode)
    if "basis" in param:
        return REvenSeries.basis(vi, int(param["basis"]), max(N, int(param["basis"])), mode)
    data = {"r": config.r, "gamma": gamma_pairs(vi), **param}
    return series_from_model(data, mode)


def build_functional(param, config: RunConfig) -> MomentFunctional:
    """
    Functional from a parameter: a serialized functional, {"delta": true} or {"delta_at": a}.
    """
    if not isinstance(param, dict):
        raise ValueError("a functional parameter must be an object")
    vi, N, mode = config.vi, config.truncation, config.mode
    if param.get("delta"):
        return MomentFunctional.delta(vi, N, mode)
    if "delta_at" in param:
        return MomentFunctional.delta_at(vi, parse_scalar(param["delta_at"], mode), N, mode)
    data = {"r": config.r, "gamma": gamma_pairs(vi), **param}
    return functional_from_model(data, mode)


def build_operator(param, config: RunConfig) -> ConvolutionOperator:
    """
    Operator from a parameter.

    Accepted forms: "br", "identity", {"identity": c}, {"translation": a, "K": 20}
    and {"symbol": [[re, im], ...]}.
    """
    vi, mode = config.vi, config.mode
    if param == "br":
        return ConvolutionOperator.hyper_bessel(vi)
    if param == "identity":
        return ConvolutionOperator.identity(vi)
    if isinstance(param, dict):
        if "identity" in param:
            return ConvolutionOperator.identity(vi, parse_scalar(param["identity"], Mode.EXACT))
        if "translation" in param:
            return ConvolutionOperator.translation(vi, parse_scalar(param["translation"], Mode.EXACT),
                                                   int(param.get("K", 20)))
        if "symbol" in param:
            return ConvolutionOperator.from_symbol(vi, [parse_scalar(b, mode) for b in param["symbol"]], mode)
    raise ValueError(f"unknown operator {param!r}")


def _require(params: Dict[str, Any], key: str):
    if key not in params:
        raise ValueError(f"missing parameter {key!r}")
    return params[key]


# Commands

def _eval_requests(params: Dict[str, Any]) -> List[Dict[str, Any]]:
    tol = float(params.get("tol", 1e-12))
    points = params.get("z", [[1, 0]])
    if not isinstance(points, list) or (len(points) == 2 and not isinstance(points[0], (list, dict))):
        points = [points]
    requests = []
    for point in points:
        if isinstance(point, dict):
            requests.append({"z": parse_scalar(point["z"], Mode.FLOAT), "tol": float(point.get("tol", tol))})
        else:
            requests.append({"z": parse_scalar(point, Mode.FLOAT), "tol": tol})
    return requests


def cmd_eval(config: RunConfig) -> CommandResult:
    """
    j_gamma(lam z) or G_gamma(lam z) with certified tail bounds, as CSV.

    Params:
        z: A point or list of points ([re, im] pairs or {"z": ..., "tol": ...})
        tol: Default tolerance (1e-12)
        lambda: Spectral parameter (1)
        function: "j" or "G"
    """
    params = config.params
    function = params.get("function", "j")
    if function not in ("j", "G"):
        raise ValueError(f"function must be 'j' or 'G', got {function!r}")
    lam = parse_scalar(params.get("lambda", 1), Mode.FLOAT)
    # G_gamma(x) = j_gamma(e^{i pi / r} x)
    rotation = config.vi.eigen_rotation if function == "G" else 1
    stream = io.StringIO()
    stream.write(f"# version={VERSION} seed={config.seed} "
                 f"config={json.dumps(config.echo(), sort_keys=True)}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(EVAL_COLUMNS)
    for request in _eval_requests(params):
        z = request["z"]
        value, bound, N = j_eval(config.vi, rotation * lam * z, request["tol"])
        writer.writerow([repr(z.real), repr(z.imag), repr(value.real), repr(value.imag), repr(bound), N])
    return CommandResult(text=stream.getvalue())


def cmd_apply(config: RunConfig) -> CommandResult:
    """
    Apply B_r or a convolution operator to a series.

    Params:
        series: Series parameter
        operator: "br" (default), "br_raw", "integral" or an operator parameter
        power: Number of applications (1)
        z: Evaluation point for "integral"
    """
    params = config.params
    u = build_series(_require(params, "series"), config)
    operator = params.get("operator", "br")
    power = int(params.get("power", 1))
    payload = report_header(config)
    if operator == "integral":
        result = apply_br_integral(u, parse_scalar(_require(params, "z"), Mode.FLOAT))
        payload.update({"value": format_pair(result.value, Mode.FLOAT),
                        "error_estimate": result.error_estimate,
                        "converged": result.converged, "order": result.order})
        return CommandResult(payload, exit_code=EXIT_OK if result.converged else EXIT_TOLERANCE)
    if operator == "br":
        result = apply_br_power(u, power)
    elif operator == "br_raw":
        result = u
        for _ in range(power):
            result = apply_br_raw(result)
    else:
        result = apply_power(build_operator(operator, config), u, power)
    payload["series"] = series_to_model(result).model_dump()
    return CommandResult(payload)


def cmd_translate(config: RunConfig) -> CommandResult:
    """
    Delsarte translation of a series.

    Params:
        series: Series parameter
        z: Translation parameter
        method: "delsarte" (default) or "addition"
    """
    params = config.params
    u = build_series(_require(params, "series"), config)
    z = parse_scalar(_require(params, "z"), config.mode)
    method = params.get("method", "delsarte")
    if method == "delsarte":
        result = translate_delsarte(u, z)
    elif method == "addition":
        result = translate_addition(u, z)
    else:
        raise ValueError(f"method must be 'delsarte' or 'addition', got {method!r}")
    payload = report_header(config)
    payload["series"] = series_to_model(result).model_dump()
    return CommandResult(payload)


def cmd_convolve(config: RunConfig) -> CommandResult:
    """
    Convolve a functional with a series, or two functionals.

    Params:
        functional: Functional parameter
        series: Series parameter (functional * series)
        other: Second functional parameter (functional * functional)
    """
    params = config.params
    T = build_functional(_require(params, "functional"), config)
    payload = report_header(config)
    if "series" in params:
        payload["series"] = series_to_model(convolve(T, build_series(params["series"], config))).model_dump()
    elif "other" in params:
        S = build_functional(params["other"], config)
        payload["functional"] = functional_to_model(moment_convolution(T, S)).model_dump()
    else:
        raise ValueError("convolve needs either 'series' or 'other'")
    return CommandResult(payload)


def cmd_fourier(config: RunConfig) -> CommandResult:
    """
    Fourier transform of a functional, or its inverse on a series.

    Params:
        functional: Functional parameter (forward)
        series: Series parameter (inverse)
        pa_norm: Weight a of a P_a norm estimate of the transform
    """
    params = config.params
    payload = report_header(config)
    if "functional" in params:
        v = fourier(build_functional(params["functional"], config))
        payload["series"] = series_to_model(v).model_dump()
    elif "series" in params:
        v = build_series(params["series"], config)
        payload["functional"] = functional_to_model(inverse_fourier(v)).model_dump()
    else:
        raise ValueError("fourier needs either 'functional' or 'series'")
    if "pa_norm" in params:
        estimate = pa_norm_estimate(v, float(params["pa_norm"]))
        payload["pa_norm"] = {"value": estimate.value, "radius": estimate.radius,
                              "at": format_pair(estimate.at, Mode.FLOAT)}
    return CommandResult(payload)


def cmd_identities(config: RunConfig) -> CommandResult:
    """
    Run the identity suite.

    Params:
        cases: Random cases per check (20)
        order: Truncation of random series (12)
        functional_order: Truncation of random functionals (8)
        fault: Name of an injected fault ("alpha")
    """
    params = config.params
    alpha_source = None
    if "fault" in params:
        if params["fault"] not in FAULTS:
            raise ValueError(f"unknown fault {params['fault']!r}, expected one of {', '.join(FAULTS)}")
        alpha_source = FAULTS[params["fault"]]
    suite = IdentitySuite(config.vi, seed=config.seed, cases=int(params.get("cases", DEFAULT_CASES)),
                          N=int(params.get("order", DEFAULT_ORDER)), alpha_source=alpha_source,
                          functional_order=int(params.get("functional_order", DEFAULT_FUNCTIONAL_ORDER)))
    results, passed = suite.run()
    payload = report_header(config)
    payload["checks"] = [r.to_dict() for r in results]
    payload["passed"] = passed
    return CommandResult(payload, exit_code=EXIT_OK if passed else EXIT_TOLERANCE)


def certify_config(config: RunConfig) -> CertifyConfig:
    params = config.params
    alphas = tuple(parse_rational(a) for a in params.get("alphas", [str(a) for a in DEFAULT_ALPHAS]))
    h = build_series(params["h"], config).to_float() if "h" in params else None
    g = build_series(params["g"], config).to_float() if "g" in params else None
    return CertifyConfig(
        alphas=alphas,
        h=h,
        g=g,
        eps=float(params.get("eps", 1e-3)),
        R=float(params.get("R", 1.0)),
        N=int(params.get("N", 12)),
        nodes=int(params.get("nodes", DEFAULT_NODES)),
        max_nodes=int(params.get("max_nodes", MAX_NODES)),
        threads=config.threads,
    )


def cmd_certify(config: RunConfig) -> CommandResult:
    """
    Chaos certificate of a convolution operator.

    Params:
        operator: Operator parameter ("br" by default)
        alphas, h, g, eps, R, N, nodes, max_nodes: Certification settings
        symbol_csv: Path for the CSV export of the eigen-symbol grid
    """
    params = config.params
    L = build_operator(params.get("operator", "br"), config)
    certificate = certify(L, certify_config(config))
    if "symbol_csv" in params and certificate.scan is not None:
        with open(params["symbol_csv"], "w", encoding="utf-8", newline="") as f:
            write_symbol_csv(certificate.scan, f)
    payload = report_header(config)
    payload["certificate"] = certificate_to_model(certificate).model_dump(by_alias=True)
    if certificate.is_scalar:
        exit_code = EXIT_REFUSAL
    elif certificate.passed:
        exit_code = EXIT_OK
    else:
        exit_code = EXIT_TOLERANCE
    return CommandResult(payload, exit_code=exit_code)


COMMAND_TABLE: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "eval": cmd_eval,
    "apply": cmd_apply,
    "translate": cmd_translate,
    "convolve": cmd_convolve,
    "fourier": cmd_fourier,
    "identities": cmd_identities,
    "certify": cmd_certify,
}


def run_command(config: RunConfig) -> CommandResult:
    logger.info("Running %s over %s", config.command, config.vi.label())
    return COMMAND_TABLE[config.command](config)
