"""Runtime verification of metric temporal logic over partially synchronous
distributed logs."""

__version__ = "0.1.0"
