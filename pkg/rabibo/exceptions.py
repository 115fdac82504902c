import threading


class UsageError(ValueError):
    """Invalid combination of command-line flags or configuration values."""


class QuadratureOrderError(ValueError):
    pass


class EigenSolverError(RuntimeError):
    pass


class ArtifactError(RuntimeError):
    """An artifact could not be serialized (e.g. a non-finite value)."""


class ExceptionContext:
    # One context stack per thread; sweeps solve points on worker threads.
    _local = threading.local()

    def __init__(self, msg):
        self.msg = msg

    def __enter__(self):
        """Add the context when entering the block."""
        ExceptionContext._stack().append(self.msg)

    def __exit__(self, exc_type, exc_value, traceback):
        """
        Remove the context only if no exception occurred.
        If an exception occurs, leave the context on the stack.
        """
        if exc_type is None:
            ExceptionContext._stack().pop()
        return False  # Do not suppress exceptions

    @classmethod
    def _stack(cls) -> list[str]:
        if not hasattr(cls._local, "stack"):
            cls._local.stack = []
        return cls._local.stack

    @classmethod
    def get_context(cls):
        """Retrieve the current context stack."""
        return " > ".join(cls._stack())

    @classmethod
    def clear_context(cls):
        """Clear the entire context stack."""
        cls._stack().clear()

    @classmethod
    def attach(cls, exception: BaseException):
        """
        Move this thread's context onto `exception` as a note, so it survives
        being re-raised on another thread.
        """
        context = cls.get_context()
        if context:
            exception.add_note(context)
        cls.clear_context()

    @classmethod
    def format_line(cls, exception):
        """
        Single-line, machine-parsable report used by the command-line tool:
        `<context> :: <ExceptionType>: <message>`. Notes left by `attach` on a
        worker thread extend this thread's context.
        """
        parts = [*cls._stack(), *getattr(exception, "__notes__", ())]
        context = " > ".join(parts)
        message = " ".join(str(exception).split())
        kind = type(exception).__name__
        return f"{context} :: {kind}: {message}" if context else f"{kind}: {message}"
