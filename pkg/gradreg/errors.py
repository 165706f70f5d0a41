"""
Exception hierarchy shared by every gradreg module.
"""


class GradregError(Exception):
    """gradreg 所有异常的基类"""


class InputError(GradregError, ValueError):
    """输入错误：文档、参数或代数/模不满足前置条件（CLI 退出码 2）"""


class ComputationError(GradregError, RuntimeError):
    """计算错误：截断窗口或维数上限不足以完成计算（CLI 退出码 3）"""


class PresentationSyntaxError(InputError):
    """表示文档格式错误"""


class InhomogeneousRelation(InputError):
    """同一关系中的各项次数、起点或终点不一致"""


class UnknownSymbol(InputError):
    """引用了未声明的箭头或顶点"""


class NonComposablePath(InputError):
    """路径中相邻箭头无法复合"""


class BadInput(InputError):
    """参数不合法（置换、维数不匹配等）"""


class MissingGorensteinData(InputError):
    """需要 AS-Gorenstein 数据但未提供"""


class NotBasic(InputError):
    """A_0 不是分裂的基本半单代数"""


class NotNNGraded(InputError):
    """平移后出现负次数的块"""


class NotFiniteDimensional(InputError):
    """模没有有限维证书"""


class Degree0Blowup(ComputationError):
    """零次子代数在上限内没有饱和"""


class CapExceeded(ComputationError):
    """某个 A_d 的维数超过上限"""


class WindowTooSmall(ComputationError):
    """所需次数超出截断窗口"""


class RadicalUnsupported(ComputationError):
    """小特征下无法用迹形式计算根"""
