"""
文件格式、内置目录、交换图与验收套件
"""
