# Xi/Lambda Workbench
