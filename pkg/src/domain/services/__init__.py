"""领域服务包。"""
