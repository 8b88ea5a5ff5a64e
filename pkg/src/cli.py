"""
命令行入口
validate / enumerate / homs / faces / crosscheck / export-dot；结果写到 stdout，错误写到 stderr
"""
import argparse
import json
import sys
from typing import Any, List, Optional

from core.codec import PayloadError
from core.errors import BoundExceeded, MismatchFound, OpetopeError, ShapeSyntaxError, ValidationError
from core.router import Router
from infrastructure.config import config
from infrastructure.logging import logger

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_BOUND = 3


class InputError(Exception):
    """输入文件无法读取或不是 JSON"""


def _load(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}")


def _dump(data: Any):
    sys.stdout.write(json.dumps(data, indent=config.output_indent, ensure_ascii=False) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opetope-ladder", description="Opetopes from graphs of closed categories.")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="check conditions A and B")
    validate.add_argument("file")

    enumerate_ = commands.add_parser("enumerate", help="list all opetopes of a frame")
    enumerate_.add_argument("--dim", type=int, required=True)
    enumerate_.add_argument("--arity", type=int)
    enumerate_.add_argument("--frame", help="corolla frame such as '(3,2)->4'")
    enumerate_.add_argument("--frame-file", help="JSON file with 'inputs' and 'output'")
    enumerate_.add_argument("--max-leaves", type=int)

    homs = commands.add_parser("homs", help="list morphisms between two opetopes")
    homs.add_argument("source")
    homs.add_argument("target")

    faces = commands.add_parser("faces", help="face words and their relations")
    faces.add_argument("file")
    faces.add_argument("--depth", type=int, choices=(1, 2), default=1)

    crosscheck = commands.add_parser("crosscheck", help="compare the ladder with iterated slicing")
    crosscheck.add_argument("--dim", type=int, required=True)
    crosscheck.add_argument("--max-leaves", type=int)
    crosscheck.add_argument("--max-inputs", type=int)
    crosscheck.add_argument("--frame-file")

    export = commands.add_parser("export-dot", help="Graphviz rendering of a graph or opetope")
    export.add_argument("file")
    return parser


def _dispatch(args: argparse.Namespace, router: Router) -> int:
    if args.command == "validate":
        try:
            _dump(router.validate(_load(args.file), path=args.file))
        except ValidationError as e:
            _dump({"valid": False, "kind": type(e).__name__, "error": str(e)})
            raise
        return EXIT_OK
    if args.command == "enumerate":
        frame_data = _load(args.frame_file) if args.frame_file else None
        _dump(router.enumerate(args.dim, args.arity, args.frame, frame_data, args.max_leaves))
        return EXIT_OK
    if args.command == "homs":
        _dump(router.homs(_load(args.source), _load(args.target)))
        return EXIT_OK
    if args.command == "faces":
        _dump(router.faces(_load(args.file), args.depth))
        return EXIT_OK
    if args.command == "crosscheck":
        frame_data = _load(args.frame_file) if args.frame_file else None
        report = router.crosscheck(args.dim, args.max_leaves, args.max_inputs, frame_data)
        _dump(report)
        return EXIT_OK if report["status"] == "match" else EXIT_INVALID
    sys.stdout.write(router.export_dot(_load(args.file)))
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """
    执行一条命令

    Returns:
        int: 0 成功，1 校验失败或不一致，2 解析错误，3 超出上限
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_PARSE
    try:
        return _dispatch(args, Router(config))
    except (InputError, ShapeSyntaxError, PayloadError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_PARSE
    except BoundExceeded as e:
        logger.log_bound_exceeded(args.command, str(e))
        sys.stderr.write(f"error: {e}\n")
        return EXIT_BOUND
    except (ValidationError, MismatchFound, OpetopeError) as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
