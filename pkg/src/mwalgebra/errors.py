"""Exception hierarchy."""


class GraphError(ValueError):
    """Unknown vertex/edge id or malformed graph data."""


class CompositionError(ValueError):
    """Two paths (or a path and a monomial slot) do not compose."""


class GraphMismatchError(ValueError):
    """Operands belong to different graphs."""


class ModelMismatchError(TypeError):
    """Path-space and geometric fiber functions were mixed."""


class SupportError(ValueError):
    """A fiber function is not supported where it has to be."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured point cap."""


class ExpressionSyntaxError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
