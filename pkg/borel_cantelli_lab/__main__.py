"""
Borel-Cantelli Lab Entry Point

Runs the command-line interface when the package is executed as a module,
translating click exceptions into the lab's exit statuses.

Usage:
    python -m borel_cantelli_lab verify --quick
    uv run python -m borel_cantelli_lab analyze --x 0.9 --alpha 0.5
"""

import sys

import click


def run(argv: list[str] | None = None) -> int:
    """Run the CLI with proper error handling."""
    try:
        from .main import main

        exit_code = main.main(args=argv, standalone_mode=False)

        return exit_code if isinstance(exit_code, int) else 0
    except click.exceptions.ClickException as e:
        # UsageError and BadParameter carry exit status 2
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except SystemExit as e:
        # Commands exit with their status through SystemExit
        return e.code if isinstance(e.code, int) else 0
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(run())
