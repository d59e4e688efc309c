"""Access to the figure recipes bundled with the package."""

import json
from importlib.resources import files
from pathlib import Path
from typing import Any

from .errors import ConfigurationError


def get_recipes_path(filename: str = '') -> Path:
    """Get path to a recipe file (or the recipe directory) bundled with the package."""
    parts = ('recipes', filename) if filename else ('recipes',)
    return Path(str(files('photinus').joinpath(*parts)))


def list_recipes() -> dict[str, str]:
    """Recipe names mapped to their descriptions, sorted by name."""
    recipes = {}
    for path in sorted(get_recipes_path().glob('*.json')):
        recipes[path.stem] = json.loads(path.read_text())['description']
    return recipes


def load_recipe(name: str) -> dict[str, Any]:
    """Load the recipe ``name``.

    Returns:
        A dict with ``description`` and the subcommand ``argv`` to run

    Raises:
        ConfigurationError: If no recipe of that name exists

    """
    path = get_recipes_path(f'{name}.json')
    if not path.exists():
        available = ', '.join(list_recipes())
        raise ConfigurationError(f'Unknown recipe {name!r}; available: {available}')
    return json.loads(path.read_text())
