"""Format, lint and type-check the photinus sources."""

import subprocess
import sys
from pathlib import Path

STEPS = (
    ('ruff format', ['ruff', 'format', '.']),
    ('ruff check --fix', ['ruff', 'check', '--fix', '.']),
    ('ty check', ['ty', 'check', 'src']),
)


def main() -> int:
    """Run every step in the project root, stopping at the first failure."""
    root_dir = Path(__file__).parent.parent.parent.parent.resolve()

    print(f'Running formatting in {root_dir}...')
    for label, command in STEPS:
        print(f'Running {label}...')
        try:
            subprocess.run(command, cwd=root_dir, check=True)
        except subprocess.CalledProcessError as e:
            print(f'Error during {label}: {e}')
            return 1
        except FileNotFoundError:
            print(f"Error: '{command[0]}' not found. Ensure it is installed in your environment.")
            return 1

    return 0


if __name__ == '__main__':
    sys.exit(main())
