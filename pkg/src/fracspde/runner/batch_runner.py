"""Bounded-concurrency execution of independent numerical tasks."""

import asyncio
import logging
from typing import Any, Callable, List, Optional, Sequence, TypeVar

from fracspde.settings import DEFAULT_THREADS

logger = logging.getLogger(__name__)

T = TypeVar("T")


async def run_single_batch(
    index: int,
    task: Callable[[], T],
    semaphore: asyncio.Semaphore,
    label: str,
) -> T:
    """
    Run one task in a worker thread once a slot is free.

    Args:
        index: Position of the task, used in log messages
        task: Zero-argument callable doing the work
        semaphore: Shared concurrency bound
        label: Name of the batch family for logs

    Returns:
        Whatever the task returns
    """
    async with semaphore:
        logger.debug(f"{label}: starting task {index}")
        return await asyncio.to_thread(task)


async def run_batches_async(
    tasks: Sequence[Callable[[], T]],
    threads: int = DEFAULT_THREADS,
    label: str = "batch",
) -> List[T]:
    """
    Run tasks with at most `threads` in flight; results come back in task order.

    Raises:
        The first task exception, after every task has finished and each
        failure has been logged
    """
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")

    logger.info(f"{label}: running {len(tasks)} tasks on {threads} threads")
    semaphore = asyncio.Semaphore(threads)
    results: List[Any] = await asyncio.gather(
        *(run_single_batch(i, task, semaphore, label) for i, task in enumerate(tasks)),
        return_exceptions=True,
    )

    first_error: Optional[BaseException] = None
    for i, result in enumerate(results):
        if isinstance(result, BaseException):
            logger.error(f"{label}: task {i} raised {type(result).__name__}: {result}")
            if first_error is None:
                first_error = result
    if first_error is not None:
        raise first_error

    logger.info(f"{label}: completed {len(results)} tasks")
    return results


def run_batches(
    tasks: Sequence[Callable[[], T]],
    threads: int = DEFAULT_THREADS,
    label: str = "batch",
) -> List[T]:
    """Synchronous entry point around run_batches_async."""
    if threads == 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    return asyncio.run(run_batches_async(tasks, threads, label))
