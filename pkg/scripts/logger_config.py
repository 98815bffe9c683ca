# scripts/logger_config.py

import logging
import os
from dotenv import load_dotenv

load_dotenv()


def setup_logger(name: str, log_level: str = "INFO", log_dir: str = None, root: bool = False) -> logging.Logger:
    """
    구조화된 로거를 설정합니다.

    Args:
        name: 로거 이름 (로그 파일 이름으로도 사용)
        log_level: 로그 레벨 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: 로그 디렉토리 (기본값: LOG_DIR 환경 변수 또는 logs)
        root: True 이면 루트 로거에 핸들러를 단다 (라이브러리 모듈 로그까지 수집)

    Returns:
        구성된 로거 인스턴스
    """
    log_dir = log_dir or os.getenv("LOG_DIR", "logs")
    os.makedirs(log_dir, exist_ok=True)

    logger = logging.getLogger() if root else logging.getLogger(name)
    level = getattr(logging, log_level.upper())
    logger.setLevel(level)

    # 이전 호출에서 단 핸들러만 제거 (중복 방지, 외부 핸들러는 유지)
    for handler in list(logger.handlers):
        if getattr(handler, "_lab_handler", False):
            logger.removeHandler(handler)
            handler.close()

    # 파일 이름에 날짜를 붙이지 않는다 (같은 설정 = 같은 파일)
    file_handler = logging.FileHandler(os.path.join(log_dir, f"{name}.log"), encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    file_handler.setFormatter(formatter)
    console_handler.setFormatter(formatter)

    for handler in (file_handler, console_handler):
        handler._lab_handler = True
        logger.addHandler(handler)

    return logger
