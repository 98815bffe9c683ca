# Tests package for Day 3.9 Advanced UI Features
