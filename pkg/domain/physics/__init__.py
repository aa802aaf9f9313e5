"""MPQ 물리 모듈 (분산, 편광, 커널)"""
