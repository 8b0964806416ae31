"""Command modules; each exposes ``get_all_commands()`` for registration."""
