import logging
import os

from .cli import cli


def main():
    # Basic logging config with optional debug toggle via env var
    level = logging.DEBUG if os.getenv("CONVEX_ENTROPY_DEBUG") else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s:%(name)s:%(message)s")
    cli(prog_name="convex-entropy")


if __name__ == "__main__":
    main()
