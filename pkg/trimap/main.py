# Copyright (C) 2026 taylor.fish <contact@taylor.fish>
#
# This file is part of trimap.
#
# trimap is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# trimap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with trimap.  If not, see <http://www.gnu.org/licenses/>.

from .blinding import SPACES, SPACE_E
from .errors import TrimapError
from .suites import SUITES, verify
from .trimap import (
    DEFAULT_PREFIX, __version__, DlpOpts, EncodeOpts, EvalOpts, PublishOpts,
    SetupOpts, VerifyOpts, dlp, encode_scalar, evaluate_trilinear,
    generate_instance, publish_function,
)
from collections import namedtuple
import logging
import os.path
import re
import sys

logger = logging.getLogger(__name__)

USAGE = """\
Usage:
  {0} setup --seed <seed> [options]
  {0} publish --seed <seed> [options] [--] <hidden-file>
  {0} encode --seed <seed> [options] [--] <a>
  {0} eval [options] [--] <a> <b> <encoding-file>
  {0} verify [options]
  {0} dlp --seed <seed> [options]
  {0} dlp --solve <challenge-file> [--public] [options]
  {0} -h | --help | --version

Arguments:
  <hidden-file>    A hidden function to publish. If "-", read from standard
                   input (unless preceded by "--").
  <a>, <b>         Scalars in [0, ell).
  <encoding-file>  An encoded scalar, as written by "encode". If "-", read
                   from standard input.

Setup options:
  --n <n>          Number of localities [default: 2].
  --ell <ell>      The odd prime torsion order [default: 5].
  --N <N>          Number of generator matrices [default: n^2 + 1].
  --q-max <q>      Largest base-field prime to search [default: 200].
  --d-max <d>      Largest extension degree to search [default: 4].
  --min-field <m>  Smallest accepted field size q^d [default: 10000].
  --ddh            Blind alpha on a second point space E'.

Other options:
  --seed <seed>    Seed for every random choice. Required by setup, publish,
                   encode and challenge creation.
  --in <prefix>    Read <prefix>.pub and <prefix>.sec [default: instance].
  --out <path>     With setup, the output prefix [default: instance].
                   Otherwise the output file [default: standard output].
  --twisted        Publish against randomly twisted keys.
  --space <space>  Point space of the published function's arguments, E or
                   E' [default: E].
  --checks <list>  Comma-separated suites to run [default: all]. Suites:
                   {1}.
  --full           Run the exhaustive variants of the suites.
  --solve <file>   Solve a challenge instead of creating one.
  --public         Solve from the public file with the pairing.
  -v --verbose     Log progress.
  --debug          Log everything and show exception tracebacks.
""".rstrip()

COMMANDS = ("setup", "publish", "encode", "eval", "verify", "dlp")

# Options that take a value: option -> (attribute, converter).
VALUE_OPTIONS = {
    "n": ("n", int),
    "ell": ("ell", int),
    "N": ("N", int),
    "q-max": ("qmax", int),
    "d-max": ("dmax", int),
    "min-field": ("min_field", int),
    "seed": ("seed", int),
    "in": ("prefix", str),
    "out": ("outfile", str),
    "space": ("space", str),
    "checks": ("checks", str),
    "solve": ("solve", str),
}

FLAG_OPTIONS = {
    "ddh": "ddh",
    "twisted": "twisted",
    "full": "full",
    "public": "public",
    "verbose": "verbose",
    "debug": "debug",
}

COMMON_OPTIONS = {"in", "out", "verbose", "debug"}
COMMAND_OPTIONS = {
    "setup": {"n", "ell", "N", "q-max", "d-max", "min-field", "seed", "ddh"},
    "publish": {"seed", "twisted", "space"},
    "encode": {"seed"},
    "eval": set(),
    "verify": {"seed", "checks", "full"},
    "dlp": {"seed", "solve", "public"},
}

POSITIONALS = {
    "setup": (),
    "publish": ("<hidden-file>",),
    "encode": ("<a>",),
    "eval": ("<a>", "<b>", "<encoding-file>"),
    "verify": (),
    "dlp": (),
}


def stderr(*args, **kwargs):
    print(*args, file=sys.stderr, **kwargs)


def get_bin_name(argv):
    if argv and argv[0]:
        return os.path.basename(argv[0])
    return "trimap"


def usage(bin_name, exit_code: int = 1):
    """Prints program usage information and optionally exits.

    :param exit_code: The program's exit code. If ``None``, the program
    will not exit.
    """
    print(USAGE.format(bin_name, ", ".join(SUITES)))
    if exit_code is not None:
        sys.exit(exit_code)


def configure_logging(args: "ParsedArgs"):
    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    if args.debug:
        level = logging.DEBUG
    logging.basicConfig(
        format="%(name)s [%(levelname)s] %(message)s", level=level,
    )


def cmd_setup(args: "ParsedArgs") -> int:
    opts = SetupOpts()
    for attr in ("n", "ell", "N", "qmax", "dmax", "seed", "ddh"):
        value = getattr(args, attr)
        if value is not None:
            setattr(opts, attr, value)
    if args.min_field is not None:
        opts.min_field_size = args.min_field
    if args.outfile is not None:
        opts.prefix = args.outfile
    instance = generate_instance(opts)
    public = instance.public
    logger.info(
        "Wrote %s.pub and %s.sec (q=%d, d=%d)", opts.prefix, opts.prefix,
        public.params.q, public.params.d,
    )
    return 0


def cmd_publish(args: "ParsedArgs") -> int:
    opts = PublishOpts()
    opts.prefix = args.prefix
    opts.hidden_path = args.files[0]
    opts.twisted = args.twisted
    opts.space = args.space
    opts.seed = args.seed
    opts.outpath = args.outfile
    publish_function(opts)
    return 0


def cmd_encode(args: "ParsedArgs") -> int:
    opts = EncodeOpts()
    opts.prefix = args.prefix
    opts.a = args.scalars[0]
    opts.seed = args.seed
    opts.outpath = args.outfile
    encode_scalar(opts)
    return 0


def cmd_eval(args: "ParsedArgs") -> int:
    opts = EvalOpts()
    opts.prefix = args.prefix
    opts.a, opts.b = args.scalars
    opts.encoding_path = args.files[0]
    opts.outpath = args.outfile
    evaluate_trilinear(opts)
    return 0


def cmd_verify(args: "ParsedArgs") -> int:
    opts = VerifyOpts()
    opts.prefix = args.prefix
    opts.checks = args.checks
    if args.seed is not None:
        opts.seed = args.seed
    opts.full = args.full
    opts.outpath = args.outfile
    results = verify(opts)
    return 0 if all(r.passed for r in results) else 1


def cmd_dlp(args: "ParsedArgs") -> int:
    opts = DlpOpts()
    opts.prefix = args.prefix
    opts.seed = args.seed
    opts.solve_path = args.solve
    opts.public = args.public
    opts.outpath = args.outfile
    dlp(opts)
    return 0


COMMAND_FUNCTIONS = {
    "setup": cmd_setup,
    "publish": cmd_publish,
    "encode": cmd_encode,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "dlp": cmd_dlp,
}


def run(args: "ParsedArgs") -> int:
    """Runs the selected subcommand.

    :param args: The arguments for the program.
    :returns: The exit status.
    """
    return COMMAND_FUNCTIONS[args.command](args)


def run_or_exit(args: "ParsedArgs", debug: bool = False):
    """Runs the program. If an error is encountered, it is printed
    and the program exits. Arguments are passed to :func:`run`.

    :param args: The arguments for the program.
    :param debug: Whether or not to run the program in debug mode.
    If true, full exception tracebacks will be shown when errors are
    encountered.
    """
    try:
        status = run(args)
    except TrimapError as e:
        if debug:
            raise
        stderr(e.message)
        sys.exit(1)
    except Exception:
        stderr(
            "Unexpected error occurred. The exception traceback "
            "is shown below:", end="\n\n",
        )
        raise
    if status:
        sys.exit(status)


class ArgParseError(namedtuple("ArgParseError", "message")):
    def print(self, *, template="{}", default=None, file=sys.stderr):
        if self.message is not None:
            print(template.format(self.message), file=file)
        elif default is not None:
            print(default, file=file)


class ParsedArgs:
    """Parsed command-line arguments.
    """
    def __init__(self):
        self.command = None
        self.debug = False
        self.verbose = False
        self.help = False
        self.version = False

        self.n = None
        self.ell = None
        self.N = None
        self.qmax = None
        self.dmax = None
        self.min_field = None
        self.seed = None
        self.ddh = False

        self.prefix = DEFAULT_PREFIX
        # If None, output goes to stdout (setup: the default prefix).
        self.outfile = None
        self.twisted = False
        self.space = SPACE_E
        # Suite names; None runs all.
        self.checks = None
        self.full = False
        self.solve = None
        self.public = False

        # Positional arguments, split by kind. A file of None means stdin.
        self.scalars = []
        self.files = []

        self.no_args = False
        self.parse_error = None


class ArgParser:
    """Parses command-line arguments.
    """
    def __init__(self, args):
        self.args = args
        self.index = 0
        self.positional_index = 0

        self.parsed = ParsedArgs()
        self.options_done = False
        self.end_early = False

    @property
    def arg(self):
        try:
            return self.args[self.index]
        except IndexError:
            return None

    @property
    def done(self):
        return self.end_early or self.index >= len(self.args)

    def advance(self):
        self.index += 1

    def error(self, message=None):
        self.parsed.parse_error = ArgParseError(message)
        self.end_early = True

    def allowed(self, name) -> bool:
        command = self.parsed.command
        if name in COMMON_OPTIONS:
            return True
        return command is not None and name in COMMAND_OPTIONS[command]

    def convert(self, name, value):
        attr, converter = VALUE_OPTIONS[name]
        try:
            value = converter(value)
        except ValueError:
            self.error("Invalid value for --{}: {}".format(name, value))
            return
        if name == "space" and value not in SPACES:
            self.error("Unknown point space: {}".format(value))
            return
        if name == "checks":
            value = [c for c in value.split(",") if c]
            unknown = [c for c in value if c not in SUITES]
            if unknown:
                self.error("Unknown suite: {}".format(unknown[0]))
                return
        setattr(self.parsed, attr, value)

    def parse_long_option(self, arg):
        body = arg[len("--"):]
        name, sep, value = body.partition("=")
        if name == "version":
            self.parsed.version = True
            self.end_early = True
            return
        if name == "help":
            self.parsed.help = True
            self.end_early = True
            return
        if name not in VALUE_OPTIONS and name not in FLAG_OPTIONS:
            self.error("Unrecognized option: {}".format(arg))
            return
        if not self.allowed(name):
            self.error('Option "--{}" is not valid {}.'.format(
                name, "here" if self.parsed.command is None else
                'for "{}"'.format(self.parsed.command),
            ))
            return
        if name in FLAG_OPTIONS:
            if sep:
                self.error('Option "--{}" takes no value.'.format(name))
                return
            setattr(self.parsed, FLAG_OPTIONS[name], True)
            return
        if not sep:
            self.advance()
            value = self.arg
        if value is None:
            self.error('Expected argument after "--{}".'.format(name))
            return
        self.convert(name, value)

    def parse_short_option_char(self, opt_body, index):
        char = opt_body[index]
        if char == "h":
            self.parsed.help = True
            self.end_early = True
            return index + 1
        if char == "v":
            self.parsed.verbose = True
            return index + 1
        self.error("Unrecognized option: -{}".format(char))
        return index

    def parse_short_option(self, arg):
        body = arg[len("-"):]
        index = 0
        while index < len(body) and not self.done:
            index = self.parse_short_option_char(body, index)

    def try_parse_option(self):
        arg = self.arg
        if arg == "--":
            self.options_done = True
            return True
        if re.match(r"--[^-]", arg):
            self.parse_long_option(arg)
            return True
        if re.match(r"-[^-]", arg):
            self.parse_short_option(arg)
            return True
        return False

    def parse_scalar(self, arg):
        try:
            self.parsed.scalars.append(int(arg))
        except ValueError:
            self.error("Expected an integer, not: {}".format(arg))

    def parse_positional(self):
        arg = self.arg
        parsed = self.parsed
        if parsed.command is None:
            if arg not in COMMANDS:
                self.error("Unknown command: {}".format(arg))
                return
            parsed.command = arg
            return
        names = POSITIONALS[parsed.command]
        if self.positional_index >= len(names):
            self.error("Unexpected positional argument: {}".format(arg))
            return
        if names[self.positional_index].endswith("-file>"):
            stdin = arg == "-" and not self.options_done
            parsed.files.append(None if stdin else arg)
            return
        self.parse_scalar(arg)

    def parse_single(self):
        if not self.options_done and self.try_parse_option():
            return
        had_command = self.parsed.command is not None
        self.parse_positional()
        if had_command:
            self.positional_index += 1

    def handle_end(self):
        parsed = self.parsed
        if self.end_early:
            return
        if self.index <= 0:
            parsed.no_args = True
            return
        if parsed.command is None:
            self.error("Missing command.")
            return
        names = POSITIONALS[parsed.command]
        if self.positional_index < len(names):
            self.error("Missing required positional argument: {}".format(
                names[self.positional_index],
            ))
            return
        needs_seed = parsed.command in ("setup", "publish", "encode")
        if parsed.command == "dlp" and parsed.solve is None:
            needs_seed = True
        if needs_seed and parsed.seed is None:
            self.error('"{}" requires --seed.'.format(parsed.command))
            return
        if parsed.public and parsed.solve is None:
            self.error('"--public" has no effect without "--solve".')

    def parse(self):
        while not self.done:
            self.parse_single()
            self.advance()
        self.handle_end()
        return self.parsed


def main_with_argv(argv):
    bin_name = get_bin_name(argv)
    args = argv[1:]
    parsed = ArgParser(args).parse()

    if parsed.parse_error is not None:
        parsed.parse_error.print(file=sys.stderr)
        stderr('See "{} --help" for usage information.'.format(bin_name))
        sys.exit(1)
    if parsed.help or parsed.no_args:
        usage(bin_name, 0 if parsed.help else 1)
    if parsed.version:
        print(__version__)
        return
    configure_logging(parsed)
    run_or_exit(parsed, debug=parsed.debug)


def main():
    main_with_argv(sys.argv)
