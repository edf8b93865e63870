"""
Entry point for the ore-kernel command-line interface.
"""

from cli import app

if __name__ == "__main__":
    app()
