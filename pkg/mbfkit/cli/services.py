"""服务容器。

统一管理线程池与由配置派生的参数对象。
从 KitSettings 读取配置，命令通过 services 取用：
- services.executor: 库里并行循环共用的线程池（threads=1 时为 None）
- services.embed_config(): FRT / 预言机流程的参数
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from ..frt import EmbedConfig
from ..hopset import HopsetConfig
from ..settings import KitSettings

logger = logging.getLogger(__name__)


@dataclass
class KitServices:
    settings: KitSettings
    executor: Optional[ThreadPoolExecutor] = None

    @classmethod
    def from_settings(cls, settings: KitSettings) -> "KitServices":
        executor = None
        if settings.threads > 1:
            logger.info("[services] 线程池 workers=%s", settings.threads)
            executor = ThreadPoolExecutor(max_workers=settings.threads, thread_name_prefix="mbfkit")
        return cls(settings=settings, executor=executor)

    def hopset_config(self) -> HopsetConfig:
        hs = self.settings.hopset
        return HopsetConfig(
            strategy=hs.strategy,
            d=hs.d,
            eps_hat=hs.eps_hat,
            seed=self.settings.seed,
            hub_factor=hs.hub_factor,
        )

    def embed_config(self, *, record_trace: bool = False) -> EmbedConfig:
        oracle = self.settings.oracle
        return EmbedConfig(
            seed=self.settings.seed,
            hopset=self.hopset_config(),
            eps_hat=oracle.eps_hat,
            cap_const=oracle.cap_const,
            verify_cap=oracle.verify_cap,
            record_trace=record_trace,
        )

    def close(self) -> None:
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    def __enter__(self) -> "KitServices":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()
