from __future__ import annotations  # c.f. PEP 563, PEP 649

import math
from typing import TYPE_CHECKING

from ..compression import read_features_csv
from ..predictor import build_samples, fit_user_model, save_model
from ..trajectory import read_discomfort_csv
from ..utils.logs import logger
from ._cli import (
    RunConfig,
    check_output_paths,
    dumps,
    execute,
    make_parser,
    parse,
    resolve_config,
    write_text,
)

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Any, Optional, Union


def cmd_train(
    sessions: Sequence[tuple[Union[str, Path], Union[str, Path]]],
    cfg: RunConfig,
    model_fname: Union[str, Path],
    user: str = "",
    metrics_fname: Optional[Union[str, Path]] = None,
) -> dict[str, Any]:
    """Train a per-user model on the sessions of a user.

    Parameters
    ----------
    sessions : sequence of tuple
        Pairs of paths ``(features CSV, discomfort CSV)``, one per session. The
        reports must be placed on the window grid of the features.
    cfg : RunConfig
        The configuration.
    model_fname : path-like
        Path to the JSON file where the model is saved.
    user : str
        Identifier of the user.
    metrics_fname : path-like | None
        Path to the JSON file where the metrics are written, checked before training.
        The metrics are only returned, the caller writes them.

    Returns
    -------
    metrics : dict
        Sizes of the train and test sets and the mean loss on each set.
    """
    if len(sessions) == 0:
        raise ValueError("At least one session is required to train a model.")
    check_output_paths(model_fname, metrics_fname)
    samples, window_s = list(), None
    for features_fname, discomfort_fname in sessions:
        features = read_features_csv(features_fname)
        if len(features) == 0:
            raise ValueError(f"The features file '{features_fname}' has no window.")
        duration = features[0].t1 - features[0].t0
        if window_s is not None and not math.isclose(duration, window_s):
            raise ValueError(
                f"The windows of '{features_fname}' last {duration} s while the "
                f"previous sessions use windows of {window_s} s."
            )
        window_s = duration
        reports = read_discomfort_csv(discomfort_fname)
        samples.extend(build_samples(features, reports, cfg.head))
    logger.info("Collected %i samples from %i session(s).", len(samples), len(sessions))
    result = fit_user_model(
        samples,
        hidden=cfg.hidden,
        head=cfg.head,
        cfg=cfg.training(),
        user=user,
        compression=cfg.compression(),
        window_s=window_s,
    )
    save_model(result.model, model_fname)
    return dict(
        head=cfg.head,
        n_train=len(result.train_samples),
        n_test=len(result.test_samples),
        train_loss=result.train_loss,
        test_loss=result.test_loss,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-train usage."""
    parser = make_parser(
        "trajsick-train",
        "Trains a per-user model from window features and Discomfort Scores.",
        "epsilon",
        "delta_mode",
        "method",
        "hidden",
        "head",
        "seed",
        "learning_rate",
        "epochs",
        "split_fraction",
    )
    parser.add_argument(
        "--session",
        nargs=2,
        action="append",
        metavar=("FEATURES", "DISCOMFORT"),
        required=True,
        help="features CSV and Discomfort CSV of a session, repeat for each session.",
    )
    parser.add_argument(
        "-m",
        "--model",
        type=str,
        metavar="path",
        required=True,
        help="output model JSON file.",
    )
    parser.add_argument(
        "--metrics",
        type=str,
        metavar="path",
        help="output metrics JSON file, by default the metrics are printed.",
        default=None,
    )
    parser.add_argument(
        "--user", type=str, metavar="str", help="identifier of the user.", default=""
    )
    args = parse(parser, argv)
    cfg = resolve_config(parser, args)

    def _train() -> None:
        metrics = cmd_train(args.session, cfg, args.model, args.user, args.metrics)
        write_text(dumps(metrics), args.metrics)

    return execute(_train)
