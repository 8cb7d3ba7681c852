# levrecon package
