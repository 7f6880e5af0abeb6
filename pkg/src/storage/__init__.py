from .local_store import LocalStore  # noqa: F401
