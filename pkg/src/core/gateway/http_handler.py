"""
HTTP请求处理器
解析请求体、调用路由器并把领域错误映射为 HTTP 状态码
"""
import json
from typing import Any, Callable, Dict, Optional

from fastapi import HTTPException, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field, ValidationError as ModelValidationError

from infrastructure.logging import logger

from ..codec import PayloadError
from ..errors import BoundExceeded, MismatchFound, OpetopeError, ValidationError
from ..router import Router


class EnumerateRequest(BaseModel):
    dim: int = Field(ge=0)
    arity: Optional[int] = None
    frame: Optional[str] = None
    frame_data: Optional[Dict[str, Any]] = None
    max_leaves: Optional[int] = None


class HomsRequest(BaseModel):
    source: Dict[str, Any]
    target: Dict[str, Any]


class FacesRequest(BaseModel):
    opetope: Dict[str, Any]
    depth: int = Field(default=1, ge=1, le=2)


class CrosscheckRequest(BaseModel):
    dim: int
    max_leaves: Optional[int] = None
    max_inputs: Optional[int] = None
    frame_data: Optional[Dict[str, Any]] = None


class HTTPHandler:
    """HTTP请求处理器"""

    def __init__(self, router: Router):
        self.router = router

    async def _body(self, request: Request) -> Any:
        try:
            return await request.json()
        except json.JSONDecodeError as e:
            raise PayloadError(f"Request body is not valid JSON: {e.msg}")

    async def _model(self, request: Request, model_cls):
        try:
            return model_cls.model_validate(await self._body(request))
        except ModelValidationError as e:
            raise PayloadError(f"Malformed request: {e.errors()[0]['msg']}") from None

    async def _run(self, request: Request, action: Callable[[], Any]) -> Any:
        """
        执行一次请求

        Raises:
            HTTPException: 422 校验失败，413 超出上限，400 其他领域错误，500 未预期的错误
        """
        path = request.url.path
        try:
            return await action()
        except ValidationError as e:
            raise HTTPException(
                status_code=422,
                detail={"valid": False, "kind": type(e).__name__, "error": str(e)},
            )
        except BoundExceeded as e:
            logger.log_bound_exceeded(path, str(e))
            raise HTTPException(status_code=413, detail=str(e))
        except MismatchFound as e:
            raise HTTPException(status_code=409, detail={"error": str(e), "witness": e.witness})
        except OpetopeError as e:
            raise HTTPException(status_code=400, detail=str(e))
        except Exception as e:
            logger.log_request_error(path=path, status_code=500, error_message=str(e))
            raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")

    async def handle_validate(self, request: Request) -> JSONResponse:
        async def action():
            return JSONResponse(content=self.router.validate(await self._body(request), path=request.url.path))

        return await self._run(request, action)

    async def handle_enumerate(self, request: Request) -> JSONResponse:
        """
        处理枚举请求

        Args:
            request: 请求体为 EnumerateRequest

        Returns:
            JSONResponse: 开胞形的 JSON 列表
        """
        async def action():
            body = await self._model(request, EnumerateRequest)
            return JSONResponse(
                content=self.router.enumerate(body.dim, body.arity, body.frame, body.frame_data, body.max_leaves)
            )

        return await self._run(request, action)

    async def handle_homs(self, request: Request) -> JSONResponse:
        async def action():
            body = await self._model(request, HomsRequest)
            return JSONResponse(content=self.router.homs(body.source, body.target))

        return await self._run(request, action)

    async def handle_faces(self, request: Request) -> JSONResponse:
        async def action():
            body = await self._model(request, FacesRequest)
            return JSONResponse(content=self.router.faces(body.opetope, body.depth))

        return await self._run(request, action)

    async def handle_crosscheck(self, request: Request) -> JSONResponse:
        async def action():
            body = await self._model(request, CrosscheckRequest)
            return JSONResponse(
                content=self.router.crosscheck(body.dim, body.max_leaves, body.max_inputs, body.frame_data)
            )

        return await self._run(request, action)

    async def handle_export_dot(self, request: Request) -> PlainTextResponse:
        async def action():
            return PlainTextResponse(self.router.export_dot(await self._body(request)), media_type="text/vnd.graphviz")

        return await self._run(request, action)
