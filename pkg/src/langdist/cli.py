"""Command-line entry point: ``langdist``.

Subcommands::

    langdist dist embed --source S.vec --target EN.vec --lexicon S-EN.tsv
    langdist dist asjp REFERENCE.csv OTHER.csv [OTHER.csv ...]
    langdist dist tree [--classifications FILE]
    langdist analyze corr|manova|describe --manifest FILE
    langdist cefr SKILL SCORE
    langdist export-bundled [--what table1|tree]

Results go to standard output (or ``--out``). Failures print one JSON line
to standard error and exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .asjp import ldnd
from .core import ENGLISH, Method, bundled_table1, cefr_level
from .embedding import semantic_similarity
from .errors import DegenerateInputError, LangDistError, ParseError
from .ingest import (
    DistanceRow,
    bundled_classifications,
    parse_classification_file,
    parse_country_language_csv,
    parse_distance_csv,
    parse_embedding_file,
    parse_lexicon_file,
    parse_manifest,
    parse_scores_csv,
    parse_wordlist_file,
    write_classifications,
    write_distance_csv,
)
from .report import (
    FORMATS,
    build_frames,
    corr_report,
    describe_report,
    dist_report,
    manova_report,
    render,
)
from .tree import DEFAULT_SCALE, ProximityScale, tree_distance

log = logging.getLogger("langdist")


class CommandError(LangDistError):
    pass


def _methods(values) -> list[Method]:
    if not values:
        return list(Method)
    out = []
    for v in values:
        for part in v.split(","):
            m = Method.parse(part)
            if m not in out:
                out.append(m)
    return out


def _cutlines(values, methods) -> dict[Method, float]:
    out = {}
    for v in values or ():
        if "=" in v:
            key, num = v.split("=", 1)
            out[Method.parse(key)] = float(num)
        else:
            for m in methods:
                out[m] = float(v)
    return out


def _cmd_dist_embed(args) -> dict:
    source = parse_embedding_file(args.source, args.language)
    target = parse_embedding_file(args.target, ENGLISH)
    lexicon = parse_lexicon_file(args.lexicon, source.language, ENGLISH)
    res = semantic_similarity(lexicon, source, target)
    if res.coverage < args.min_coverage:
        raise DegenerateInputError(
            f"{res.language.code}: lexicon coverage {res.coverage:.4f} "
            f"below --min-coverage {args.min_coverage}"
        )
    return dist_report([DistanceRow(res.language.code, Method.EMBEDDING, res.sld, res.coverage)])


def _cmd_dist_asjp(args) -> dict:
    reference = parse_wordlist_file(args.reference)
    rows = []
    for path in args.others:
        other = parse_wordlist_file(path)
        res = ldnd(other, reference, synonyms=args.synonyms)
        log.info("%s: %d concepts, ldn=%r, global=%r", other.language.code,
                 res.concepts_used, res.ldn, res.global_divergence)
        rows.append(DistanceRow(other.language.code, Method.ASJP, res.ldnd))
    return dist_report(rows)


def _cmd_dist_tree(args) -> dict:
    if args.classifications:
        classes = parse_classification_file(args.classifications)
    else:
        classes = bundled_classifications()
    scale = DEFAULT_SCALE
    if args.scale:
        vals = [float(x) for x in args.scale.split(",")]
        scale = ProximityScale(dict(enumerate(vals)))
    ref_code = args.reference.strip().lower()
    if ref_code not in classes:
        raise CommandError(f"reference language {args.reference!r} has no classification")
    ref = classes[ref_code]
    rows = [DistanceRow(code, Method.TREE, tree_distance(c, ref, scale))
            for code, c in classes.items() if code != ref_code]
    return dist_report(rows)


def _load_analysis(args):
    man = parse_manifest(args.manifest)
    distances = parse_distance_csv(man.distances) if man.distances else bundled_table1()
    cmap = parse_country_language_csv(man.countries, known=distances)
    for country in cmap.unresolved:
        log.warning("unresolved language for %s: %s", country, cmap.entries[country].code)
    tables = [parse_scores_csv(p) for p in man.scores.values()]
    for year, table in zip(man.scores, tables):
        if table.year != year:
            raise CommandError(f"manifest lists {year} but file holds {table.year}")
    return man, distances, cmap, tables


def _cmd_analyze(args) -> dict:
    man, distances, cmap, tables = _load_analysis(args)
    if args.kind == "describe":
        return describe_report(tables, cmap)
    methods = _methods(args.method)
    frames = build_frames(tables, cmap, distances, methods, args.exclude_flagged)
    for f in frames:
        for country, why in f.exclusions:
            log.info("%d/%s: excluded %s (%s)", f.year, f.method.value, country, why)
    if args.kind == "corr":
        return corr_report(frames)
    cutlines = {**man.cutlines, **_cutlines(args.cutline, methods)}
    return manova_report(frames, cutlines)


def _cmd_export(args) -> str:
    if args.what == "tree":
        return write_classifications(bundled_classifications())
    table = bundled_table1()
    if args.format == "csv":
        return write_distance_csv(table)
    rows = [DistanceRow(rec.language.code, rec.method, rec.value)
            for rec in table.records if not rec.is_missing]
    return render(dist_report(rows), args.format)


def _cmd_cefr(args) -> str:
    level = cefr_level(args.skill, args.score)
    if args.format == "json":
        return json.dumps({"skill": args.skill.lower(), "score": args.score,
                           "level": level.label}) + "\n"
    return level.label + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="langdist", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", help="compute language distances")
    dsub = dist.add_subparsers(dest="kind", required=True)

    e = dsub.add_parser("embed", parents=[common], help="embedding-based distance to English")
    e.add_argument("--source", required=True, type=Path, help="source-language embedding file")
    e.add_argument("--target", required=True, type=Path, help="English embedding file")
    e.add_argument("--lexicon", required=True, type=Path, help="source<TAB>English word pairs")
    e.add_argument("--language", help="source language code (default: source file stem)")
    e.add_argument("--min-coverage", type=float, default=0.0,
                   help="fail if fewer than this fraction of lexicon pairs are covered")
    e.set_defaults(func=_cmd_dist_embed)

    a = dsub.add_parser("asjp", parents=[common], help="LDND against a reference wordlist")
    a.add_argument("reference", type=Path)
    a.add_argument("others", nargs="+", type=Path)
    a.add_argument("--synonyms", choices=("min", "first"), default="min")
    a.set_defaults(func=_cmd_dist_asjp)

    t = dsub.add_parser("tree", parents=[common], help="family-tree distance")
    t.add_argument("--classifications", type=Path, help="language,path CSV (default: bundled)")
    t.add_argument("--reference", default="english")
    t.add_argument("--scale", help="comma-separated proximity for 0,1,2,... shared branches")
    t.set_defaults(func=_cmd_dist_tree)

    an = sub.add_parser("analyze", parents=[common], help="statistics against score tables")
    an.add_argument("kind", choices=("corr", "manova", "describe"))
    an.add_argument("--manifest", required=True, type=Path)
    an.add_argument("--method", action="append",
                    help="embedding, asjp or tree; repeat or comma-separate (default: all)")
    an.add_argument("--cutline", action="append",
                    help="METHOD=VALUE, or VALUE for every selected method")
    an.add_argument("--exclude-flagged", action="store_true",
                    help="drop distances carrying a quality flag")
    an.set_defaults(func=_cmd_analyze)

    c = sub.add_parser("cefr", parents=[common], help="map a TOEFL iBT score to a CEFR level")
    c.add_argument("skill", choices=("total", "reading", "listening", "speaking", "writing"),
                   type=str.lower)
    c.add_argument("score", type=float)
    c.set_defaults(func=_cmd_cefr)

    x = sub.add_parser("export-bundled", parents=[common], help="print bundled reference data")
    x.add_argument("--what", choices=("table1", "tree"), default="table1")
    x.set_defaults(func=_cmd_export)
    return p


def _error_line(exc: Exception) -> str:
    payload = {"error": type(exc).__name__, "message": getattr(exc, "message", None) or str(exc)}
    if isinstance(exc, ParseError):
        payload["path"] = exc.path
        payload["line"] = exc.line
    return json.dumps(payload, ensure_ascii=False)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        result = args.func(args)
        text = result if isinstance(result, str) else render(result, args.format)
        if args.out:
            args.out.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except (LangDistError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(_error_line(exc) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
