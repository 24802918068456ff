"""Pipeline driver: extract -> train -> predict -> evaluate.

The paralinguistic path computes one whole-recording feature vector per
utterance (segment_index -1) and feeds the linear SVM/SVR. The embedding
path consumes pre-computed per-segment ".aeb" files, scores each segment
with the FC head (or a linear model), and aggregates by majority vote
(classification) or segment mean (regression).

Every stage is deterministic for a fixed seed and rewrites its output
byte-identically on unchanged input.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import aggregate, embed_io, functionals, lld, metrics, mlp, model_io, standardize, svm
from .audio import PIPELINE_RATE, load_wav, resample, segment_count
from .manifest import Manifest, load_manifest, split as manifest_split


class CliError(RuntimeError):
    pass


def _manifest_subset(manifest: Manifest, which: str) -> Manifest:
    if which == "all":
        return manifest
    sub = manifest_split(manifest, which)
    if len(sub) == 0:
        raise CliError(f"manifest has no {which} entries")
    return sub


# ---------------------------------------------------------------- extract


def cmd_extract(args) -> int:
    manifest = load_manifest(args.manifest)
    if args.embeddings_dir:
        return _extract_check_embeddings(manifest, args)
    return _extract_paraling(manifest, args)


def _extract_paraling(manifest: Manifest, args) -> int:
    missing = [e.id for e in manifest if not Path(e.audio_path).is_file()]
    if missing:
        raise CliError(f"missing audio for: {', '.join(missing)}")
    config = lld.LldConfig()
    rows = []
    for entry in manifest:
        clip = load_wav(entry.audio_path, clip_id=entry.id)
        clip = resample(clip, PIPELINE_RATE)
        vec = functionals.apply_functionals(lld.extract_llds(clip, config))
        rows.append((entry.id, -1, vec))
    functionals.write_feature_csv(args.out, rows)
    print(f"wrote {len(rows)} feature rows to {args.out}")
    return 0


def _extract_check_embeddings(manifest: Manifest, args) -> int:
    emb_dir = Path(args.embeddings_dir)
    lines = ["utt_id,status,dim,n_segments"]
    problems = []
    for entry in manifest:
        path = emb_dir / f"{entry.id}.aeb"
        if not path.is_file():
            problems.append(f"{entry.id}: missing {path.name}")
            lines.append(f"{entry.id},missing,,")
            continue
        try:
            emb = embed_io.read(path)
        except embed_io.AebFormatError as exc:
            problems.append(f"{entry.id}: {exc}")
            lines.append(f"{entry.id},invalid,,")
            continue
        status = "ok"
        audio = Path(entry.audio_path)
        if audio.is_file():
            clip = resample(load_wav(audio, clip_id=entry.id), PIPELINE_RATE)
            expected = segment_count(
                len(clip.samples), clip.sample_rate, args.segment_seconds, args.min_tail_fraction
            )
            if expected != emb.n_segments:
                status = "segment_mismatch"
                problems.append(
                    f"{entry.id}: {emb.n_segments} segments in file, {expected} expected from audio"
                )
        lines.append(f"{entry.id},{status},{emb.dim},{emb.n_segments}")
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    if problems:
        raise CliError("embedding coverage check failed:\n  " + "\n  ".join(problems))
    print(f"verified {len(manifest)} embedding files; report at {args.out}")
    return 0


# ------------------------------------------------------------------ train


def _load_paraling_matrix(features_path, manifest: Manifest):
    rows = functionals.read_feature_csv(features_path)
    by_id = {utt_id: vec for utt_id, seg, vec in rows if seg == -1}
    missing = [e.id for e in manifest if e.id not in by_id]
    if missing:
        raise CliError(f"feature CSV lacks rows for: {', '.join(missing)}")
    X = np.vstack([by_id[e.id].values for e in manifest])
    return X


def _load_segment_matrix(emb_dir, manifest: Manifest):
    """Stack all segment embeddings; returns (X, owner_ids, dim)."""
    emb_dir = Path(emb_dir)
    mats, owners = [], []
    dim = None
    missing = []
    for entry in manifest:
        path = emb_dir / f"{entry.id}.aeb"
        if not path.is_file():
            missing.append(entry.id)
            continue
        emb = embed_io.read(path)
        if dim is None:
            dim = emb.dim
        elif dim != emb.dim:
            raise CliError(f"{entry.id}: embedding dim {emb.dim} != {dim} seen earlier")
        mats.append(emb.vectors.astype(np.float64))
        owners.extend([entry.id] * emb.n_segments)
    if missing:
        raise CliError(f"missing embeddings for: {', '.join(missing)}")
    return np.vstack(mats), owners, dim


def cmd_train(args) -> int:
    manifest = load_manifest(args.manifest)
    train_set = _manifest_subset(manifest, "train")

    if bool(args.features) == bool(args.embeddings_dir):
        raise CliError("train needs exactly one of --features or --embeddings-dir")

    if args.features:
        X_raw = _load_paraling_matrix(args.features, train_set)
        owners = [e.id for e in train_set]
        schema = lld.FEATURE_SCHEMA
        if args.backend != "svm":
            raise CliError("the paralinguistic path is whole-recording SVM only")
    else:
        X_raw, owners, dim = _load_segment_matrix(args.embeddings_dir, train_set)
        schema = f"aeb-d{dim}"

    scaler = standardize.fit(X_raw)
    X = standardize.transform(scaler, X_raw)

    by_id = {e.id: e for e in train_set}
    labels = np.array([1.0 if by_id[o].label == "AD" else -1.0 for o in owners])
    mmse = np.array([by_id[o].mmse for o in owners], dtype=np.float64)

    if args.backend == "svm":
        if args.task == "cls":
            model = svm.train_svc(
                X, labels, c=args.c, seed=args.seed, max_epochs=args.max_epochs,
                tol=args.tol, standardizer=scaler, feature_schema=schema,
            )
        else:
            model = svm.train_svr(
                X, mmse, c=args.c, epsilon=args.epsilon, seed=args.seed,
                max_epochs=args.max_epochs, tol=args.tol,
                standardizer=scaler, feature_schema=schema,
            )
        model_io.save_model(args.model, model)
    else:
        out_units = 2 if args.task == "cls" else 1
        net = mlp.init(X.shape[1], args.hidden, out_units, seed=args.seed)
        y = (labels > 0).astype(np.float64) if args.task == "cls" else mmse
        config = mlp.TrainConfig(lr=args.lr, epochs=args.epochs, batch=args.batch, seed=args.seed)
        net, losses = mlp.train(net, X, y, config)
        bundle = model_io.MlpBundle(
            model=net,
            standardizer=scaler,
            feature_schema=schema,
            task="mlp_cls" if args.task == "cls" else "mlp_reg",
        )
        model_io.save_model(args.model, bundle)
        print(f"final epoch loss {losses[-1]:.6f}")
    print(f"trained {args.backend}/{args.task} on {len(X)} rows -> {args.model}")
    return 0


# ---------------------------------------------------------------- predict


def _segment_score(model, x) -> float:
    """Signed classification score for one standardized segment/row."""
    if isinstance(model, svm.LinearModel):
        raise TypeError("linear models are scored via svm.decision")
    out = mlp.forward(model.model, x)
    return float(out[1] - out[0])  # log-odds difference, AD positive


def cmd_predict(args) -> int:
    manifest = load_manifest(args.manifest)
    target = _manifest_subset(manifest, args.split)
    model = model_io.load_model(args.model)
    task = "cls" if model.task in ("svc", "mlp_cls") else "reg"

    if bool(args.features) == bool(args.embeddings_dir):
        raise CliError("predict needs exactly one of --features or --embeddings-dir")

    rows = []
    if args.features:
        if not isinstance(model, svm.LinearModel):
            raise CliError("feature-CSV prediction requires an svm model")
        if model.feature_schema != lld.FEATURE_SCHEMA:
            raise CliError(
                f"model was trained on {model.feature_schema!r}, features are {lld.FEATURE_SCHEMA!r}"
            )
        X = _load_paraling_matrix(args.features, target)
        for entry, x in zip(target, X):
            score = svm.decision(model, x)
            if task == "cls":
                rows.append((entry.id, svm.label_for_score(score), score))
            else:
                rows.append((entry.id, score))
    else:
        X, owners, dim = _load_segment_matrix(args.embeddings_dir, target)
        schema = f"aeb-d{dim}"
        if model.feature_schema != schema:
            raise CliError(f"model was trained on {model.feature_schema!r}, embeddings are {schema!r}")
        Xs = standardize.transform(model.standardizer, X) if not isinstance(model, svm.LinearModel) else X
        for entry in target:
            idx = [k for k, o in enumerate(owners) if o == entry.id]
            preds = []
            for j, k in enumerate(idx):
                if isinstance(model, svm.LinearModel):
                    s = svm.decision(model, X[k])
                    preds.append(
                        aggregate.SegmentPrediction(
                            parent_id=entry.id, index=j,
                            label_score=s if task == "cls" else None,
                            value=s if task == "reg" else None,
                        )
                    )
                else:
                    if task == "cls":
                        preds.append(
                            aggregate.SegmentPrediction(
                                parent_id=entry.id, index=j, label_score=_segment_score(model, Xs[k])
                            )
                        )
                    else:
                        preds.append(
                            aggregate.SegmentPrediction(
                                parent_id=entry.id, index=j, value=float(mlp.forward(model.model, Xs[k])[0])
                            )
                        )
            if task == "cls":
                label = aggregate.vote(preds)
                total = sum(p.label_score for p in preds)
                rows.append((entry.id, label, total))
            else:
                rows.append((entry.id, aggregate.mean_value(preds)))

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if task == "cls":
            writer.writerow(("utt_id", "pred_label", "score"))
            for utt_id, label, score in rows:
                writer.writerow((utt_id, label, repr(float(score))))
        else:
            writer.writerow(("utt_id", "pred_mmse"))
            for utt_id, value in rows:
                writer.writerow((utt_id, repr(float(value))))
    print(f"wrote {len(rows)} predictions to {args.out}")
    return 0


# --------------------------------------------------------------- evaluate


def _read_predictions(path, task: str) -> dict:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        preds = {}
        if task == "cls":
            if header is None or header[:2] != ["utt_id", "pred_label"]:
                raise CliError(f"{path}: not a classification predictions CSV")
            for row in reader:
                preds[row[0]] = row[1]
        else:
            if header is None or header[:2] != ["utt_id", "pred_mmse"]:
                raise CliError(f"{path}: not a regression predictions CSV")
            for row in reader:
                preds[row[0]] = float(row[1])
    if not preds:
        raise CliError(f"{path}: no predictions")
    return preds


def cmd_evaluate(args) -> int:
    manifest = load_manifest(args.manifest)
    preds = _read_predictions(args.predictions, args.task)
    entries = {e.id: e for e in manifest if e.id in preds}
    missing = sorted(set(preds) - set(entries))
    if missing:
        raise CliError(f"predictions for ids absent from manifest: {', '.join(missing)}")

    if args.task == "cls":
        unlabeled = sorted(i for i, e in entries.items() if e.label is None)
        if unlabeled:
            raise CliError(f"truth labels missing for: {', '.join(unlabeled)}")
        truths = {i: e.label for i, e in entries.items()}
        report = metrics.classification_report(preds, truths)
        text = metrics.format_report(report)
    else:
        unscored = sorted(i for i, e in entries.items() if e.mmse is None)
        if unscored:
            raise CliError(f"truth mmse missing for: {', '.join(unscored)}")
        truths = {i: e.mmse for i, e in entries.items()}
        value = metrics.rmse(preds, truths)
        text = metrics.format_regression_report(value, n=len(truths))

    Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


# ------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adspeech",
        description="Speech-based dementia screening pipeline (AD/CN classification and MMSE regression)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="compute paralinguistic features or verify embedding coverage")
    p_extract.add_argument("--manifest", required=True)
    p_extract.add_argument("--embeddings-dir", help="check .aeb coverage instead of extracting features")
    p_extract.add_argument("--segment-seconds", type=float, default=6.0)
    p_extract.add_argument("--min-tail-fraction", type=float, default=0.5)
    p_extract.add_argument("--out", required=True, help="features CSV (paraling) or coverage report (embed)")
    p_extract.set_defaults(func=cmd_extract)

    p_train = sub.add_parser("train", help="fit a model on the manifest train split")
    p_train.add_argument("--manifest", required=True)
    p_train.add_argument("--features", help="feature CSV from extract (paralinguistic path)")
    p_train.add_argument("--embeddings-dir", help="directory of .aeb files (embedding path)")
    p_train.add_argument("--task", choices=("cls", "reg"), required=True)
    p_train.add_argument("--backend", choices=("svm", "mlp"), default="svm")
    p_train.add_argument("--model", required=True, help="output model JSON path")
    p_train.add_argument("--seed", type=int, default=42)
    p_train.add_argument("--c", type=float, default=svm.DEFAULT_C)
    p_train.add_argument("--epsilon", type=float, default=svm.DEFAULT_EPSILON)
    p_train.add_argument("--tol", type=float, default=svm.DEFAULT_TOL)
    p_train.add_argument("--max-epochs", type=int, default=svm.DEFAULT_MAX_EPOCHS)
    p_train.add_argument("--hidden", type=int, default=mlp.DEFAULT_HIDDEN)
    p_train.add_argument("--lr", type=float, default=mlp.DEFAULT_LR)
    p_train.add_argument("--epochs", type=int, default=mlp.DEFAULT_EPOCHS)
    p_train.add_argument("--batch", type=int, default=mlp.DEFAULT_BATCH)
    p_train.set_defaults(func=cmd_train)

    p_predict = sub.add_parser("predict", help="score recordings with a trained model")
    p_predict.add_argument("--manifest", required=True)
    p_predict.add_argument("--features")
    p_predict.add_argument("--embeddings-dir")
    p_predict.add_argument("--model", required=True)
    p_predict.add_argument("--split", choices=("train", "test", "all"), default="test")
    p_predict.add_argument("--out", required=True, help="predictions CSV")
    p_predict.set_defaults(func=cmd_predict)

    p_eval = sub.add_parser("evaluate", help="compare predictions against manifest truth")
    p_eval.add_argument("--manifest", required=True)
    p_eval.add_argument("--predictions", required=True)
    p_eval.add_argument("--task", choices=("cls", "reg"), required=True)
    p_eval.add_argument("--out", required=True, help="report path")
    p_eval.set_defaults(func=cmd_evaluate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
