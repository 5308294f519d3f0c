import argparse, logging, os, traceback
from experiments.experiment_type import ExperimentType
from .report_format import ReportFormat

DEFAULT_CONFIG = "config/config.json"

def validate_args(args):
    """
    Validates parsed arguments.
    验证解析后的参数。

    Args:
        args: Parsed arguments object.
        args: 解析后的参数对象。
    Raises:
        ValueError: If validation fails.
        ValueError: 如果验证失败。
    """
    # Validate --config
    # 验证 --config 参数
    if not os.path.exists(args.config):
        raise ValueError(f"Config file does not exist: {args.config}")

    # Validate --eps: strictly decreasing values in (0, 1]
    # 验证 --eps 参数：(0, 1] 内严格递减
    if args.eps is not None:
        if any(not 0 < eps <= 1 for eps in args.eps):
            raise ValueError(f"Epsilon values must lie in (0, 1]: {args.eps}")
        if any(b >= a for a, b in zip(args.eps, args.eps[1:])):
            raise ValueError(f"Epsilon values must be strictly decreasing: {args.eps}")

    # Validate --threads
    # 验证 --threads 参数
    if args.threads is not None and args.threads < 1:
        raise ValueError(f"Thread count must be positive, got {args.threads}")

    # Validate --input for the report subcommand
    # 验证 report 子命令的 --input 参数
    if args.subcommand == ExperimentType.REPORT.value:
        if not args.input:
            raise ValueError("The report subcommand requires --input PATH")
        if not os.path.exists(args.input):
            raise ValueError(f"Report file does not exist: {args.input}")

    # Validate --out directory
    # 验证 --out 目录
    if args.out:
        out_dir = os.path.dirname(args.out)
        if out_dir and not os.path.exists(out_dir):
            raise ValueError(f"The directory for the report does not exist: {out_dir}")

def parse_and_validate_console_args(cli_args=None):
    """
    Parses and validates console arguments.
    解析并验证控制台参数。

    Args:
        cli_args: Optional CLI arguments for testing.
        cli_args: 用于测试的可选命令行参数。
    Returns:
        argparse.Namespace: Parsed and validated arguments.
        argparse.Namespace: 已解析和验证的参数。
    Raises:
        RuntimeError: If argument parsing or validation fails.
        RuntimeError: 如果参数解析或验证失败。
    """
    try:
        parser = argparse.ArgumentParser(
            description="Thin-channel reaction-diffusion lab - measure how the dynamics on a thin channel "
                "converge to the one-dimensional limit\n\n"
                "Each subcommand runs one family of checks over a sweep of channel thicknesses, "
                "fits the convergence rates and writes a CSV or JSON report.",
            formatter_class=argparse.ArgumentDefaultsHelpFormatter
        )

        parser.add_argument(
            'subcommand',
            choices=[experiment.value for experiment in ExperimentType],
            help='Experiment to run.'  # 要运行的实验
        )

        required_args = parser.add_argument_group("Required Arguments")
        required_args.add_argument(
            '--config',
            type=str,
            default=DEFAULT_CONFIG,
            metavar='CONFIG',
            help='Path to the JSON configuration file.'  # JSON 配置文件路径
        )

        optional_args = parser.add_argument_group("Optional Arguments")
        optional_args.add_argument(
            '--eps',
            type=float,
            nargs='+',
            metavar='EPS',
            help='Override the epsilon list (strictly decreasing, in (0, 1]).'  # 覆盖 epsilon 列表
        )
        optional_args.add_argument(
            '--out',
            type=str,
            metavar='FILE',
            help='Path of the report file (defaults to the output directory of the config).'  # 报告文件路径
        )
        optional_args.add_argument(
            '--format',
            type=str,
            choices=[fmt.value for fmt in ReportFormat],
            help='Report format; overrides the config.'  # 报告格式
        )
        optional_args.add_argument(
            '--seed',
            type=int,
            metavar='N',
            help='Seed of all randomized probes; overrides the config.'  # 随机探针的种子
        )
        optional_args.add_argument(
            '--threads',
            type=int,
            metavar='N',
            help='Number of epsilon rows computed in parallel.'  # 并行计算的 epsilon 行数
        )
        optional_args.add_argument(
            '--input',
            type=str,
            metavar='FILE',
            help='Stored report to re-emit (report subcommand only).'  # 需要重新输出的报告
        )
        optional_args.add_argument(
            '--profile',
            action='store_true',
            help='Enable profiling for performance analysis.'  # 启用性能分析的性能剖析
        )

        args = parser.parse_args(cli_args)
        validate_args(args)
        return args

    except SystemExit as e:
        if e.code == 0:  # Exit code 0 indicates a successful --help invocation
            raise
        logging.error(f"Argument parsing failed: {e}")
        raise RuntimeError("Failed to parse arguments. Please check your inputs.") from e

    except ValueError as e:
        logging.error(f"Validation failed: {e}")
        raise RuntimeError("Argument validation failed.") from e

    except Exception as e:
        logging.error(f"An unexpected error occurred while parsing arguments: {e}")
        logging.error(traceback.format_exc())
        raise RuntimeError("An unexpected error occurred during argument parsing.") from e
