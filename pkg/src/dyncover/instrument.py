"""Global elementary-operation counter used by the scaling report."""


class OpCounter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def reset(self):
        self.count = 0


OPS = OpCounter()
