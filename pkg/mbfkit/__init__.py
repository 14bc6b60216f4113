"""mbfkit：半环上的 MBF 类算法、模拟图 H 与 FRT 树嵌入

模块化结构：
- algebra: 半环与半模
- graph: 图模型、读写、参考算法
- engine: MBF 迭代引擎与各实例
- hopset: hop set 构造与校验
- simgraph: 模拟图 H 与预言机
- frt: LE 列表、FRT 树、伸缩率、路径还原
- apps: 近似度量、k-median、buy-at-bulk
- cli: 命令行
"""

__version__ = "0.1.0"
