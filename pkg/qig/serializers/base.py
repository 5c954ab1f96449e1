"""
序列化器基类
"""

import logging
from abc import abstractmethod
from pathlib import Path
from typing import Any, Type, Union

from ..types.base import SerializationException, Serializer

logger = logging.getLogger(__name__)


class BaseSerializer(Serializer):
    """
    序列化器基类：子类只实现字符串编解码，字节与文件接口及异常包装由基类统一完成。
    除 OSError 外的任何失败都包装为 SerializationException，原始异常保存在 cause 中。
    """
    encoding = "utf-8"

    @abstractmethod
    def _encode(self, obj: Any) -> str:
        """
        具体编码实现。
        :param obj: 待编码对象
        :return: 文本
        :raises Exception: 编码失败
        """
        pass

    @abstractmethod
    def _decode(self, text: str, target_type: Type) -> Any:
        """
        具体解码实现。
        :param text: 文本
        :param target_type: 目标类型
        :return: 解码后的对象
        :raises Exception: 解码失败
        """
        pass

    def serialize_to_string(self, obj: Any) -> str:
        try:
            text = self._encode(obj)
            logger.debug(f"{type(self).__name__} 编码成功: {type(obj).__name__}")
            return text
        except Exception as e:
            logger.exception(f"编码失败: {type(obj).__name__}")
            raise SerializationException(f"编码失败: {e}", e)

    def deserialize_from_string(self, data: str, target_type: Type = Any) -> Any:
        try:
            result = self._decode(data, target_type)
            logger.debug(f"{type(self).__name__} 解码成功: {type(result).__name__}")
            return result
        except SerializationException:
            raise
        except Exception as e:
            logger.exception("解码失败")
            raise SerializationException(f"解码失败: {e}", e)

    def serialize(self, obj: Any) -> bytes:
        return self.serialize_to_string(obj).encode(self.encoding)

    def deserialize(self, data: bytes, target_type: Type = Any) -> Any:
        try:
            text = data.decode(self.encoding)
        except UnicodeDecodeError as e:
            logger.exception("字节解码失败")
            raise SerializationException(f"字节解码失败: {e}", e)
        return self.deserialize_from_string(text, target_type)

    def write_file(self, obj: Any, path: Union[str, Path]) -> Path:
        """
        编码并写入文件。
        :param obj: 待编码对象
        :param path: 文件路径
        :return: 写入的路径
        :raises SerializationException: 编码失败
        :raises OSError: 文件不可写
        """
        target = Path(path)
        text = self.serialize_to_string(obj)
        target.write_text(text, encoding=self.encoding)
        logger.info(f"已写入文件: {target}")
        return target

    def read_file(self, path: Union[str, Path], target_type: Type = Any) -> Any:
        """
        读取文件并解码。
        :param path: 文件路径
        :param target_type: 目标类型
        :return: 解码后的对象
        :raises SerializationException: 解码失败
        :raises OSError: 文件不可读
        """
        text = Path(path).read_text(encoding=self.encoding)
        return self.deserialize_from_string(text, target_type)
