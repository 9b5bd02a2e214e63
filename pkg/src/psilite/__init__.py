"""psilite: headless Java source analysis and refactoring toolkit."""

__version__ = "0.1.0"
