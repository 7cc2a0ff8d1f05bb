#!/usr/bin/env python
"""
Entry point for the toolkit.

    python manage.py mseg <subcommand> [inputs] [flags]
    python manage.py runserver        # HTTP mirror
"""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django is not importable; install requirements.txt into the "
            "active environment first."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
