"""
Borel-Cantelli Lab Main Entry Point
"""

import importlib
import logging
from functools import cache
from typing import Any

import click

from borel_cantelli_lab import envs
from borel_cantelli_lab.logger import configure_logging

MODULE_TO_COMMANDS = {
    "classify": lambda: importlib.import_module("borel_cantelli_lab.commands.classify").get_all_commands(),
    "analyze": lambda: importlib.import_module("borel_cantelli_lab.commands.analyze").get_all_commands(),
    "simulate": lambda: importlib.import_module("borel_cantelli_lab.commands.simulate").get_all_commands(),
    "verify": lambda: importlib.import_module("borel_cantelli_lab.commands.verify").get_all_commands(),
}

logger = logging.getLogger("borel_cantelli_lab.main")


@cache
def get_module_commands(module_name: str) -> dict[str, click.Command]:
    """Lazily import a command module and cache its commands by name."""
    registered: dict[str, click.Command] = {}
    if module_name not in MODULE_TO_COMMANDS:
        return registered
    try:
        for command in MODULE_TO_COMMANDS[module_name]():
            logger.debug(f"Registering command: {command.name}")
            if command.name in registered:
                logger.warning(f"Skipping duplicate command: {command.name}")
                continue
            registered[str(command.name)] = command
    except ImportError as e:
        logger.error(f"Failed loading module {module_name}: {e}")
    return registered


class LazyCommandGroup(click.Group):
    """Imports a command module only when its command is invoked."""

    def list_commands(self, ctx: click.Context) -> list[str]:
        return list(MODULE_TO_COMMANDS)

    def get_command(self, ctx: click.Context, cmd_name: str) -> Any:
        return get_module_commands(cmd_name).get(cmd_name)


@click.group(cls=LazyCommandGroup)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=lambda: envs.get_log_level(),
    show_default="WARNING",
    help="Logging level; logs go to stderr.",
)
def main(log_level: str) -> None:
    """Decide P(A_n i.o.) with Borel-Cantelli lemmas and explore the Clayton example."""
    # Configure root logger so all modules inherit the same level
    configure_logging(level=log_level)


if __name__ == "__main__":
    main()
