"""
代数计算：L(p)、环 R、层、路径代数、带势箭图与 3-预投射代数
"""
