"""
Opetope Ladder 服务主入口
提供与命令行相同功能的 HTTP API 接口
"""
from fastapi import FastAPI, Request

from core.gateway.http_handler import HTTPHandler
from core.router import Router
from infrastructure.config import config
from infrastructure.logging import logger

app = FastAPI(
    title="Opetope Ladder",
    description="由闭范畴的图归纳构造开胞形",
    version="1.0.0"
)

# 初始化组件
router = Router(config)
http_handler = HTTPHandler(router)


@app.post("/v1/validate")
async def validate(request: Request):
    """校验开胞形或图"""
    return await http_handler.handle_validate(request)


@app.post("/v1/enumerate")
async def enumerate_opetopes(request: Request):
    """枚举给定框架的开胞形"""
    return await http_handler.handle_enumerate(request)


@app.post("/v1/homs")
async def homs(request: Request):
    return await http_handler.handle_homs(request)


@app.post("/v1/faces")
async def faces(request: Request):
    """面映射与面关系"""
    return await http_handler.handle_faces(request)


@app.post("/v1/crosscheck")
async def crosscheck(request: Request):
    """阶梯与切片塔的交叉验证"""
    return await http_handler.handle_crosscheck(request)


@app.post("/v1/export-dot")
async def export_dot(request: Request):
    return await http_handler.handle_export_dot(request)


@app.on_event("startup")
async def startup_event():
    """服务启动时的初始化"""
    logger.logger.info("Opetope Ladder service starting up...")


@app.on_event("shutdown")
async def shutdown_event():
    """服务关闭时的清理"""
    logger.logger.info("Opetope Ladder service shutting down...")


if __name__ == "__main__":
    import uvicorn
    server = config.get_server_config()
    uvicorn.run(
        app,
        host=server["host"],
        port=server["port"],
        log_level="info"
    )
