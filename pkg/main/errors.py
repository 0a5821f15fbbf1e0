"""Base error type shared by every app.

Each app defines the concrete errors it raises next to the code that raises
them; commands only need to know about MeasurementError and its exit code.
"""

# exit codes, as documented for the command line surface
EXIT_INPUT = 2
EXIT_IO = 3


class MeasurementError(Exception):
    exit_code = EXIT_INPUT


class MeasurementIOError(MeasurementError):
    exit_code = EXIT_IO

# vim: set ts=4 sw=4 et:
